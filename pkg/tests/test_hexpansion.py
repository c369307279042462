from fractions import Fraction

import pytest

from kq import fock
from kq.bases import _image_part, p_beta
from kq.hexpansion import (
    HBraExpansion,
    classical_q,
    deformed_q,
    two_row_q,
    vacuum_expectation,
)
from kq.partitions import (
    length,
    odd_parts_only,
    strict_partitions_upto,
    weight,
    z_lambda,
)
from kq.pseries import PSeries
from kq.scalars import BETA, ONE, ZERO, BetaScalar

D = 6


def test_one_row_values():
    assert classical_q((1,), D) == PSeries({(1,): 2}, D)
    assert classical_q((2,), D) == PSeries({(1, 1): 2}, D)
    q3 = PSeries({(1, 1, 1): Fraction(4, 3), (3,): Fraction(2, 3)}, D)
    assert classical_q((3,), D) == q3


def test_two_row_value():
    got = classical_q((2, 1), D)
    expect = PSeries({(1, 1, 1): Fraction(4, 3), (3,): Fraction(-4, 3)}, D)
    assert got == expect


def test_two_row_antisymmetry_edge():
    # the padding column Q_{(a,0)} must collapse to the one-row function
    for a in range(1, D + 1):
        assert two_row_q(a, 0, D) == classical_q((a,), D)


def test_q_uses_only_odd_power_sums():
    for mu in strict_partitions_upto(D):
        for key in classical_q(mu, D).terms:
            assert odd_parts_only(key)


def classical_pairing(f, g):
    total = ZERO
    for key, c in f.terms.items():
        d = g.coefficient(key)
        if d:
            total = total + c * d * Fraction(z_lambda(key), 2 ** length(key))
    return total


def test_q_orthogonality():
    parts = list(strict_partitions_upto(D))
    for lam in parts:
        for mu in parts:
            got = classical_pairing(classical_q(lam, D), classical_q(mu, D))
            if lam == mu:
                assert got == BetaScalar(2 ** length(lam))
            else:
                assert got == ZERO


def test_deformed_top_degree_is_classical():
    for mu in strict_partitions_upto(4):
        w = weight(mu)
        par = deformed_q(mu, "paren", D)
        bra = deformed_q(mu, "bracket", D)
        assert par.lowest_degree() == (w if mu else 0)
        assert par.homogeneous_part(w) == classical_q(mu, D).homogeneous_part(w)
        if mu:
            assert bra.top_degree() == w
        assert bra.homogeneous_part(w) == classical_q(mu, D).homogeneous_part(w)


def h_operator_rows(flavor, row_bound, degree_bound):
    """<0|e^H by raw operator exponentiation, rows down to -row_bound."""
    start = {(): PSeries.one(degree_bound)}

    def apply_h(state):
        out = {}
        for k in range(1, row_bound + 1, 2):
            pk = _image_part(flavor, k, degree_bound) * Fraction(2, k)
            for w, c in fock.bra_apply_b(state, k).items():
                if fock.grade(w) < -row_bound:
                    continue
                c = c * pk
                prev = out.get(w)
                tot = c if prev is None else prev + c
                if tot:
                    out[w] = tot
                elif prev is not None:
                    del out[w]
        return out

    total = dict(start)
    term = start
    j = 1
    while term:
        term = apply_h(term)
        term = {w: c * Fraction(1, j) for w, c in term.items()}
        for w, c in term.items():
            tot = total.get(w, PSeries.zero(degree_bound)) + c
            if tot:
                total[w] = tot
            else:
                total.pop(w, None)
        j += 1
    return total


@pytest.mark.parametrize("flavor", ["paren", "bracket"])
def test_rows_match_operator_exponential(flavor):
    bound = 5
    oracle = h_operator_rows(flavor, bound, bound)
    closed = HBraExpansion(bound, flavor).rows
    assert set(oracle) == set(closed)
    for w in closed:
        assert oracle[w] == closed[w], w


def test_expectation_of_vacuum_is_one():
    assert vacuum_expectation(fock.vacuum_ket(), "paren", D) == PSeries.one(D)


def test_odd_words_pair_to_zero():
    assert vacuum_expectation({(1,): ONE}, "paren", D).is_zero()
    assert vacuum_expectation({(3, 1, 0): ONE}, "bracket", D).is_zero()


def test_expectation_of_single_excitation():
    # <0|e^H phi_1 phi_0|0> = 2 p_1 - b p_2 + ... , the deformed 2 p_1
    got = vacuum_expectation({(1, 0): ONE}, "paren", D)
    assert got == p_beta(1, D) * 2
    low = got.truncate(2)
    assert low == PSeries({(1,): 2, (2,): -BETA}, 2)


def test_expectation_is_linear():
    v = {(1, 0): BetaScalar(3), (2, 1): -BETA}
    got = vacuum_expectation(v, "bracket", D)
    expect = (
        deformed_q((1,), "bracket", D) * 3
        + deformed_q((2, 1), "bracket", D) * -BETA
    )
    assert got == expect


def test_expectation_row_guard():
    exp = HBraExpansion(3, "paren")
    with pytest.raises(ValueError):
        exp.expectation({(4, 1): ONE})
    assert exp.expectation({(2, 1): ONE}) == deformed_q((2, 1), "paren", 3)


def test_row_lookup():
    exp = HBraExpansion(4, "paren")
    assert exp.coefficient((0, -1)) == deformed_q((1,), "paren", 4) * Fraction(-1, 2)
    assert exp.coefficient((-1, -2)) == deformed_q((2, 1), "paren", 4) * Fraction(-1, 4)
    assert exp.coefficient((0, -1, -2)).is_zero()
