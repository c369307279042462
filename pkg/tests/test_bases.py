from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kq.bases import (
    from_deformed_basis,
    p_beta,
    p_bracket,
    q_series,
    to_deformed_basis,
)
from kq.finitevars import eval_finite
from kq.partitions import partitions_upto
from kq.pseries import PSeries
from kq.scalars import BETA, ONE, BetaScalar


def test_q_series_low_terms():
    q = q_series(4)
    assert q[0] == PSeries.one(4)
    assert q[1] == PSeries({(1,): 2}, 4)
    # q_2 = 2 p_1^2
    assert q[2] == PSeries({(1, 1): 2}, 4)
    # q_3 = (4/3) p_{111} + (2/3) p_3
    assert q[3] == PSeries({(1, 1, 1): Fraction(4, 3), (3,): Fraction(2, 3)}, 4)


def test_q_series_finite_evaluation():
    # in one variable q(z) = (1+xz)/(1-xz), so q_n = 2 x^n for n >= 1
    q = q_series(5)
    for n in range(1, 6):
        g = eval_finite(q[n], 1)
        assert g.terms == {(n,): BetaScalar(2)}


def test_q_pieri_like_symmetry():
    # generating identity q(z) q(-z) = 1, i.e. sum_{i} (-1)^i q_i q_{n-i} = 0
    q = q_series(6)
    for n in range(1, 7):
        acc = PSeries.zero(6)
        for i in range(n + 1):
            term = q[i] * q[n - i]
            acc = acc + (term if i % 2 == 0 else -term)
        assert acc.is_zero()


def test_p_beta_low_terms():
    f = p_beta(1, 3)
    assert f.coefficient((1,)) == ONE
    assert f.coefficient((2,)) == -BETA * Fraction(1, 2)
    assert f.coefficient((3,)) == BETA ** 2 * Fraction(1, 4)
    # one-variable check: x/(1+(b/2)x) expands with alternating signs
    g = p_beta(2, 4)
    assert g.coefficient((2,)) == ONE
    assert g.coefficient((3,)) == -BETA
    assert g.coefficient((4,)) == BETA ** 2 * Fraction(3, 4)


def test_p_bracket_low_terms():
    assert p_bracket(1) == PSeries({(1,): 1}, 1)
    assert p_bracket(2) == PSeries({(2,): 1, (1,): BETA}, 2)
    f = p_bracket(3)
    assert f.coefficient((3,)) == ONE
    assert f.coefficient((2,)) == BETA * Fraction(3, 2)
    assert f.coefficient((1,)) == BETA ** 2 * Fraction(3, 4)


def test_deformed_bases_are_classical_at_beta_zero():
    for n in range(1, 5):
        assert p_beta(n, 6).specialize_beta(0) == PSeries.p(n, 6)
        assert p_bracket(n, 6).specialize_beta(0) == PSeries.p(n, 6)


def test_one_variable_substitution_consistency():
    # evaluating p_beta(n) at a single rational letter x should equal
    # (x/(1+(b/2)x))^n expanded to the same order; check n=1, x=1
    f = eval_finite(p_beta(1, 5), 1)
    # sum_m (-b/2)^{m-1} x^m at x=1: 1 - b/2 + b^2/4 - ...
    val = f.specialize_vars([1])
    expect = sum(((-BETA * Fraction(1, 2)) ** k for k in range(5)),
                 BetaScalar(0))
    assert val == expect


def series_strategy(bound):
    keys = list(partitions_upto(bound))
    return st.dictionaries(
        st.sampled_from(keys), st.integers(-5, 5), max_size=4
    ).map(lambda d: PSeries(d, bound))


@given(series_strategy(5), st.sampled_from(["paren", "bracket"]))
@settings(max_examples=30, deadline=None)
def test_basis_round_trip(f, flavor):
    coeffs = to_deformed_basis(f, flavor)
    assert from_deformed_basis(coeffs, flavor, f.degree_bound) == f


def test_to_deformed_basis_spot_values():
    # p_1 expressed in paren coordinates needs upward corrections
    f = PSeries.p(1, 2)
    coeffs = to_deformed_basis(f, "paren")
    assert coeffs[(1,)] == ONE
    assert coeffs[(2,)] == BETA * Fraction(1, 2)
    # and p_2 = p_bracket(2) - b p_bracket(1)
    g = PSeries.p(2, 2)
    coeffs = to_deformed_basis(g, "bracket")
    assert coeffs == {(1,): -BETA, (2,): ONE}


def test_unknown_flavor_rejected():
    with pytest.raises(ValueError):
        to_deformed_basis(PSeries.one(2), "curly")
    with pytest.raises(ValueError):
        p_beta(0, 3)
