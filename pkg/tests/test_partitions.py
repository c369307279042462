import pytest

from kq import partitions as pt


def test_check_partition():
    assert pt.check_partition([3, 1]) == (3, 1)
    assert pt.check_partition(()) == ()
    assert pt.check_partition([2, 2]) == (2, 2)
    with pytest.raises(ValueError):
        pt.check_partition([1, 2])
    with pytest.raises(ValueError):
        pt.check_partition([2, 0])
    with pytest.raises(ValueError):
        pt.check_partition([2, 2], strict=True)


def test_counts():
    # partition numbers 1, 1, 2, 3, 5, 7, 11 and strict 1, 1, 1, 2, 2, 3, 4
    assert [len(pt.partitions_of(n)) for n in range(7)] == [1, 1, 2, 3, 5, 7, 11]
    assert [len(pt.strict_partitions_of(n)) for n in range(7)] == [1, 1, 1, 2, 2, 3, 4]
    # every strict partition is strict and of the right weight
    for n in range(9):
        for p in pt.strict_partitions_of(n):
            assert pt.is_strict(p) and sum(p) == n


def test_strict_upto_matches_acceptance_inventory():
    inventory = list(pt.strict_partitions_upto(6))
    assert len(inventory) == 14
    assert inventory[0] == ()
    assert (3, 2, 1) in inventory


def test_z_lambda():
    assert pt.z_lambda(()) == 1
    assert pt.z_lambda((3, 1, 1)) == 6
    assert pt.z_lambda((5, 3, 1)) == 15
    assert pt.z_lambda((2, 2)) == 8
    assert pt.z_lambda((1, 1, 1)) == 6


def test_even_ceil():
    assert pt.even_ceil(0) == 0
    assert pt.even_ceil(1) == 2
    assert pt.even_ceil(2) == 2
    assert pt.even_ceil(3) == 4


def test_containment_and_rows():
    assert pt.contains((3, 1), (2,))
    assert pt.contains((3, 1), (3, 1))
    assert pt.contains((3, 1), (1, 1))
    assert not pt.contains((3, 1), (2, 2))
    assert not pt.contains((2,), (1, 1))
    # skew (2,1)/(1) meets both rows; (2,1)/(2) meets one
    assert pt.row_count((2, 1), (1,)) == 2
    assert pt.row_count((2, 1), (2,)) == 1
    assert pt.row_count((2, 1), (2, 1)) == 0
    with pytest.raises(ValueError):
        pt.row_count((2,), (3,))


def test_sub_strict_partitions():
    subs = pt.sub_strict_partitions((3, 1))
    assert subs == [(), (1,), (2,), (2, 1), (3,), (3, 1)]
    # no duplicates, all strict, all contained
    assert len(set(subs)) == len(subs)
    for q in subs:
        assert pt.is_strict(q) and pt.contains((3, 1), q)
    assert pt.sub_strict_partitions(()) == [()]


def test_merge_and_misc():
    assert pt.merge((3, 1), (2, 1)) == (3, 2, 1, 1)
    assert pt.odd_parts_only((5, 3, 3, 1))
    assert not pt.odd_parts_only((4, 1))
    assert pt.multiplicities((3, 1, 1)) == {3: 1, 1: 2}
