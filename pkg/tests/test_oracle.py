from fractions import Fraction
from itertools import permutations

import pytest

from kq.finitevars import FinitePoly, eval_finite
from kq.hexpansion import classical_q
from kq.oracle import gq_oracle, gq_oracle_literal
from kq.scalars import BETA, ONE, BetaScalar

FULL = 10**6


def beta_zero(fp):
    return FinitePoly(
        fp.nvars,
        {k: BetaScalar(v.specialize(0)) for k, v in fp.terms.items()},
    )


def permuted(fp, perm):
    return FinitePoly(
        fp.nvars,
        {tuple(k[perm[i]] for i in range(fp.nvars)): v for k, v in fp.terms.items()},
    )


def test_one_variable_one_row():
    got = gq_oracle((1,), 1, trunc=FULL)
    assert got == FinitePoly(1, {(1,): 2, (2,): BETA})


def test_one_variable_two_rows_is_zero():
    assert gq_oracle((2, 1), 1, trunc=FULL) == FinitePoly.zero(1)


def test_more_rows_than_variables_vanishes():
    assert gq_oracle((3, 2, 1), 2) == FinitePoly.zero(2)


@pytest.mark.parametrize("lam", [(1,), (2,), (2, 1), (3, 1), (3, 2, 1)])
@pytest.mark.parametrize("n", [2, 3, 4])
def test_divided_differences_match_literal(lam, n):
    if len(lam) > n:
        return
    assert gq_oracle(lam, n, trunc=FULL) == gq_oracle_literal(lam, n)


def test_truncation_is_exact_prefix():
    full = gq_oracle_literal((2, 1), 4)
    for t in (3, 4, 5, 6):
        assert gq_oracle((2, 1), 4, trunc=t) == full.truncate_degree(t)


@pytest.mark.parametrize("lam", [(1,), (2, 1), (3, 2), (4, 1)])
def test_beta_zero_is_classical_q(lam):
    n = 5
    w = sum(lam)
    got = beta_zero(gq_oracle(lam, n, trunc=w))
    expect = eval_finite(classical_q(lam, w), n).truncate_degree(w)
    assert got == expect


def test_symmetric_in_the_variables():
    got = gq_oracle((2, 1), 3, trunc=6)
    for perm in permutations(range(3)):
        assert permuted(got, perm) == got


def test_stability_under_last_variable_zero():
    big = gq_oracle((2, 1), 4, trunc=4)
    small = gq_oracle((2, 1), 3, trunc=4)
    dropped = FinitePoly(
        3, {k[:3]: v for k, v in big.terms.items() if k[3] == 0}
    )
    assert dropped == small


def test_q_cancellation_property():
    # appending (t, an inverse of t under x+y+bxy) changes nothing
    lam = (2, 1)
    inner = gq_oracle(lam, 2, trunc=FULL)
    outer = gq_oracle(lam, 4, trunc=FULL)
    for t in (Fraction(1, 2), Fraction(2), Fraction(-1, 3)):
        bar = BetaScalar((-t,), (1, t))  # -t / (1 + b t)
        for tail in [(Fraction(1, 3), Fraction(5, 7)), (Fraction(2), Fraction(0))]:
            got = outer.specialize_vars([BetaScalar(t), bar, *map(BetaScalar, tail)])
            expect = inner.specialize_vars([BetaScalar(v) for v in tail])
            assert got == expect


def test_padding_row_of_zero_rejected():
    with pytest.raises(ValueError):
        gq_oracle((2, 0), 3)
