"""The dual family: one-row generators q^[b]_n, o_lambda, and gp_lambda.

Dual objects live in the subring generated by the odd power sums; unlike
GQ_lambda they are honest polynomials (top degree of o_lambda is |lambda|),
so a degree bound D only has to clear |lambda|.  The generating series is

    q^[b](z) = sum_n q^[b]_n z^n = prod_i (1 - x_i zbar) / (1 - x_i z),

with zbar = -z / (1 + b z).  Three routes compute o_lambda:

  * o_pfaffian_1: 2^{-r} Pf of g-table contractions of the q^[b]_n;
  * o_pfaffian_2: Pf of binomially twisted two-index blocks o_(a,b),
    quarter-normalized so that no global 2-power survives;
  * o_fermionic: 2^{-r} <0| e^{H^[b]} prod_i (e^{-theta} phihat_{l_i}) |0>.

gp_lambda is produced from o_lambda by inverting the unitriangular pairing
matrix <GQ_lambda, o_mu>, whose closed form is inner_product_formula.  The
pairing itself (bilinear_pair) weighs matching odd power-sum monomials by
z_lambda / 2^{l(lambda)}; fock_pairing evaluates its Fock-space avatar
^g<mu|lambda>^G and cross-checks the product formula prod_i I(mu_i,
lambda_i).  check_dual_cancellation tests the substitution x_1 = t,
x_2 = -t - b that carves out the dual ring; it is exact, with no
truncation caveat, because its inputs are polynomials.
"""

from fractions import Fraction
from functools import lru_cache

from . import fock
from .bases import to_deformed_basis
from .finitevars import eval_finite
from .hexpansion import vacuum_expectation
from .laurent import g_table
from .partitions import (
    check_partition,
    contains,
    row_count,
    sub_strict_partitions,
    z_lambda,
)
from .pfaffian import pfaffian_from_upper
from .pseries import PSeries, z_exp
from .scalars import BetaScalar, ONE, ZERO, binom_general


@lru_cache(maxsize=None)
def _q_bracket_upto(top, degree_bound):
    """q^[b]_0..q^[b]_top, all truncated past degree_bound.

    log q^[b](z) has z^j coefficient
        sum_{n<=j} (p_n/n) (delta_{nj} + (-1)^{j+1} C(j-1, j-n) b^{j-n}),
    every term of p-weight <= j, so q^[b]_j is a polynomial of top degree
    at most j and the truncation only matters for j > degree_bound.
    """
    ex = [PSeries.zero(degree_bound) for _ in range(top + 1)]
    for n in range(1, top + 1):
        pn = PSeries.p(n, degree_bound) if n <= degree_bound else None
        if pn is None or pn.is_zero():
            continue
        w = Fraction(1, n)
        for j in range(n, top + 1):
            c = binom_general(j - 1, j - n) * w
            ex[j] = ex[j] + pn * BetaScalar.beta_power(j - n, -c if j % 2 == 0 else c)
        ex[n] = ex[n] + pn * w
    return tuple(z_exp(ex))


def q_bracket_series(degree_bound):
    """The sequence [q^[b]_0, ..., q^[b]_D]; q^[b]_0 = 1, q^[b]_1 = 2 p_1."""
    return _q_bracket_upto(degree_bound, degree_bound)


class OSeries:
    """One-row duals o_n at a fixed degree bound.

    o_n = (1/2) sum_{k=0}^{n} (-b)^k q^[b]_{n-k}, the u^n coefficient of
    (1/2) (1 + b u)^{-1} q^[b](u).  Entries below n_floor = 0 are zero;
    asking above the bound is refused rather than silently truncated,
    since o_n has top degree exactly n.
    """

    __slots__ = ("degree_bound", "n_floor", "coefficients")

    def __init__(self, degree_bound):
        if degree_bound < 0:
            raise ValueError("degree bound must be nonnegative")
        self.degree_bound = degree_bound
        self.n_floor = 0
        qb = q_bracket_series(degree_bound)
        self.coefficients = {}
        for n in range(degree_bound + 1):
            acc = PSeries.zero(degree_bound)
            for k in range(n + 1):
                half = Fraction(-1 if k % 2 else 1, 2)
                acc = acc + qb[n - k] * BetaScalar.beta_power(k, half)
            self.coefficients[n] = acc

    def coefficient(self, n):
        if n < self.n_floor:
            return PSeries.zero(self.degree_bound)
        if n > self.degree_bound:
            raise ValueError("o_n above the degree bound is not computed")
        return self.coefficients[n]


@lru_cache(maxsize=None)
def o_series(degree_bound):
    return OSeries(degree_bound)


@lru_cache(maxsize=None)
def o_two_index(a, b, degree_bound):
    """The two-row dual o_(a,b): a quarter of [u^a v^b] of the block

        Psi(u,v) = (1+bu)^{-1} (1+bv)^{-2} q^[b](u) q^[b](v)
                   (u - v) / (u + v + b u v),

    v ascending.  Zero whenever b < 0 or a + b < 0: every row of the
    kernel table sits on q >= 0, p >= -q, and q^[b] has no negative
    indices.  The 1/4 makes o_(a,b) = o_{(a,b)} for a > b >= 0 and lets
    the second Pfaffian formula run without a global scale.
    """
    if b < 0 or a + b < 0:
        return PSeries.zero(degree_bound)
    qb = _q_bracket_upto(max(a + b, b), degree_bound)
    tab = g_table(1, 2, 2, (a, b))
    acc = PSeries.zero(degree_bound)
    for (p, q), c in tab.entries.items():
        ai, bj = a - p, b - q
        if ai >= 0 and bj >= 0:
            acc = acc + (qb[ai] * qb[bj]) * c
    return acc * Fraction(1, 4)


def _checked(lam, degree_bound):
    lam = check_partition(lam, strict=True)
    if sum(lam) > degree_bound:
        raise ValueError("degree bound is below |lambda|")
    return lam


def o_pfaffian_1(lam, degree_bound):
    """o_lambda = 2^{-r} Pf(zeta) from g-table contractions of q^[b] rows."""
    lam = _checked(lam, degree_bound)
    D = degree_bound
    r = len(lam)
    if r == 0:
        return PSeries.one(D)
    rp = r + r % 2
    parts = lam + (0,) * (rp - r)
    qb = q_bracket_series(D)
    upper = {}
    for i in range(1, rp + 1):
        li = parts[i - 1]
        for j in range(i + 1, rp + 1):
            acc = PSeries.zero(D)
            if j == r + 1:
                tab = g_table(i, j, r, (li, 0))
                for p, c in tab.entries.items():
                    acc = acc + qb[li - p] * c
            else:
                lj = parts[j - 1]
                tab = g_table(i, j, r, (li, lj))
                for (p, q), c in tab.entries.items():
                    ai, bj = li - p, lj - q
                    if ai >= 0 and bj >= 0:
                        acc = acc + (qb[ai] * qb[bj]) * c
            upper[(i - 1, j - 1)] = acc
    pf = pfaffian_from_upper(upper, one=PSeries.one(D))
    return pf * Fraction(1, 2 ** r)


def o_pfaffian_2(lam, degree_bound):
    """o_lambda = Pf(kappa), kappa_{ij} a binomial twist of two-index blocks.

    kappa_{i,j} = sum_{k,l >= 0} C(1-i, k) C(2-j, l) b^{k+l}
                  o_(lambda_i - k, lambda_j - l),
    cut off by the vanishing floor of o_two_index (l <= lambda_j and
    k + l <= lambda_i + lambda_j); the padding column carries
    kappa_{i,r+1} = sum_{k <= lambda_i} C(1-i, k) b^k o_{lambda_i - k}.
    No overall power of 2: the quarter in o_two_index absorbs it.
    """
    lam = _checked(lam, degree_bound)
    D = degree_bound
    r = len(lam)
    if r == 0:
        return PSeries.one(D)
    rp = r + r % 2
    parts = lam + (0,) * (rp - r)
    osr = o_series(D)
    upper = {}
    for i in range(1, rp + 1):
        li = parts[i - 1]
        for j in range(i + 1, rp + 1):
            acc = PSeries.zero(D)
            if j == r + 1:
                for k in range(li + 1):
                    ck = binom_general(1 - i, k)
                    if ck:
                        acc = acc + osr.coefficient(li - k) * BetaScalar.beta_power(k, ck)
            else:
                lj = parts[j - 1]
                for l in range(lj + 1):
                    cl = binom_general(2 - j, l)
                    if not cl:
                        continue
                    for k in range(li + lj - l + 1):
                        ck = binom_general(1 - i, k)
                        if not ck:
                            continue
                        val = o_two_index(li - k, lj - l, D)
                        if not val.is_zero():
                            acc = acc + val * BetaScalar.beta_power(k + l, ck * cl)
            upper[(i - 1, j - 1)] = acc
    return pfaffian_from_upper(upper, one=PSeries.one(D))


def o_fermionic(lam, degree_bound):
    """o_lambda as 2^{-r} <0| e^{H^[b]} |lambda>^g on the Fock side.

    |lambda>^g = e^{-theta} phihat_{l_1} e^{-theta} phihat_{l_2} ...
    acting on |0>, with a trailing e^{-theta} phihat_0 when r is odd; the
    contraction against <0| e^{H^[b]} runs in the bracket flavor.
    """
    lam = _checked(lam, degree_bound)
    r = len(lam)
    ops = list(lam) + ([0] if r % 2 else [])
    state = fock.vacuum_ket()
    for n in reversed(ops):
        state = fock.ket_apply_phihat(state, n)
        state = fock.ket_apply_theta_exp(state, sign=-1)
    return vacuum_expectation(state, "bracket", degree_bound) * Fraction(1, 2 ** r)


def pairing_i(m, n):
    """I(m, n), the elementary pairing of one bra row against one ket row.

    Zero for m < n; 1 at m = n = 0; 2 on the rest of the diagonal;
    (-b)^{m-n} above it.
    """
    if m < n:
        return ZERO
    if m == n:
        return ONE if m == 0 else BetaScalar(2)
    return BetaScalar.beta_power(m - n, -1 if (m - n) % 2 else 1)


def _check_word(word, name):
    for s, t in zip(word, word[1:]):
        if s <= t:
            raise ValueError(f"{name} must be strictly decreasing")
    if word and word[-1] < 0:
        raise ValueError(f"{name} must have nonnegative parts")


def fock_pairing(mu, lam):
    """^g<mu|lambda>^G: the dual bra against the GQ-side ket.

    mu and lam are strictly decreasing words of nonnegative integers (a
    strict partition, optionally padded by one zero).  The bra is
    <0| (phihat_{mu_r})* e^{-Theta} ... (phihat_{mu_1})* e^{-Theta}; the
    ket is phi^(b)_{lam_1} e^{Theta} ... phi^(b)_{lam_s} e^{Theta} |0>.
    The value must match prod_i I(mu_i, lam_i) after zero-extending the
    shorter word, and is zero when the lengths differ in parity.  A bare
    length mismatch does not force zero: Theta does not annihilate the
    vacuum, so the empty ket behaves like a reservoir of zero rows
    (e.g. ^g<1,0|empty>^G = I(1,0) I(0,0) = -b).  Disagreement between
    the Fock evaluation and the product raises.
    """
    mu, lam = tuple(mu), tuple(lam)
    _check_word(mu, "mu")
    _check_word(lam, "lam")
    state = fock.vacuum_bra()
    for n in reversed(mu):
        state = fock.bra_apply_phihat_star(state, n)
        state = fock.bra_apply_theta_exp(state, sign=-1)
    for n in lam:
        state = fock.bra_apply_phi_beta(state, n)
        state = fock.bra_apply_theta_exp(state, sign=1)
    got = state.get((), ZERO)
    if (len(mu) - len(lam)) % 2:
        want = ZERO
    else:
        size = max(len(mu), len(lam))
        want = ONE
        for m, n in zip(mu + (0,) * (size - len(mu)), lam + (0,) * (size - len(lam))):
            want = want * pairing_i(m, n)
    if got != want:
        raise ArithmeticError("Fock pairing disagrees with the I product")
    return got


def bilinear_pair(f, g):
    """<f, g> for f in the paren ring and g (a polynomial) in the bracket ring.

    Both arguments are expanded over the odd deformed power sums; support
    on a partition with an even part means the argument left its ring and
    is rejected.  Matching monomials are weighed by z_lambda / 2^{l}.
    f must not be truncated below the top degree of g, or coordinates
    that pair against g would already be lost.
    """
    top = g.top_degree()
    if top is not None and f.degree_bound < top:
        raise ValueError("first argument is truncated below deg of the second")
    cf = to_deformed_basis(f, "paren")
    cg = to_deformed_basis(g, "bracket")
    for coords in (cf, cg):
        for mu in coords:
            if any(part % 2 == 0 for part in mu):
                raise ValueError(f"support on even partition {mu}")
    total = ZERO
    for mu, a in cf.items():
        b = cg.get(mu)
        if b is not None:
            total = total + a * b * Fraction(z_lambda(mu), 2 ** len(mu))
    return total


def inner_product_formula(lam, mu):
    """Closed form of <GQ_lambda, o_mu>.

    (-b)^{|mu| - |lambda|} / 2^{rows of mu strictly above lambda} when mu
    contains lambda, else 0.  Containment is the whole condition: no
    length restriction cuts the support further, since o_mu carries the
    nonzero constant term (-b)^{|mu|} / 2^{len(mu)} and therefore pairs
    nontrivially with 1 = GQ_empty.
    """
    lam = check_partition(lam, strict=True)
    mu = check_partition(mu, strict=True)
    if not contains(mu, lam):
        return ZERO
    d = sum(mu) - sum(lam)
    c = Fraction(-1 if d % 2 else 1, 2 ** row_count(mu, lam))
    return BetaScalar.beta_power(d, c)


def gp(lam, degree_bound):
    """gp_lambda, the dual basis to GQ: <GQ_lambda, gp_mu> = delta_{lambda,mu}.

    Obtained from the o family by inverting the unitriangular matrix
    inner_product_formula: subtract, for every strict mu strictly inside
    lambda (the empty partition included), the mu-row correction
    (-b)^{|lambda|-|mu|} 2^{-row_count(lambda, mu)} gp_mu.
    """
    lam = _checked(lam, degree_bound)
    return _gp_cached(lam, degree_bound)


@lru_cache(maxsize=None)
def _gp_cached(lam, degree_bound):
    acc = o_pfaffian_1(lam, degree_bound)
    for mu in sub_strict_partitions(lam):
        if mu == lam:
            continue
        d = sum(lam) - sum(mu)
        c = Fraction(-1 if d % 2 else 1, 2 ** row_count(lam, mu))
        acc = acc - _gp_cached(mu, degree_bound) * BetaScalar.beta_power(d, c)
    return acc


def check_dual_cancellation(g, nvars):
    """Does g(t, -t - b, x_3, ..., x_n) not depend on t?

    Exact (no truncation caveat: members of the dual ring are
    polynomials).  Requires nvars >= deg g + 2 so the surviving variables
    still determine g.  Returns False as soon as some t^b (b >= 1) slice
    of the substituted polynomial fails to cancel.
    """
    top = g.top_degree()
    if top is None:
        return True
    if nvars < top + 2:
        raise ValueError("need nvars >= deg g + 2")
    h = eval_finite(g, nvars)
    slices = {}
    for exps, c in h.terms.items():
        e0, e1, tail = exps[0], exps[1], exps[2:]
        # (-t-b)^{e1} spreads x_2^{e1} over t^j b^{e1-j} with sign (-1)^{e1}
        for j in range(e1 + 1):
            tpow = e0 + j
            if tpow == 0:
                continue
            cb = binom_general(e1, j)
            add = c * BetaScalar.beta_power(e1 - j, -cb if e1 % 2 else cb)
            key = (tpow, tail)
            prev = slices.get(key)
            slices[key] = add if prev is None else prev + add
    return not any(slices.values())
