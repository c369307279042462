"""K-theoretic Q-functions GQ_lambda in the truncated power-sum ring.

Everything is computed modulo total degree > D with coefficients in Q[beta],
starting from the one-row generating function

    GQ(z) = sum_{n in Z} GQ_n z^n
          = theta(z) / ((1 + beta z^{-1}) theta(-beta) theta(-z-beta)),

where theta(a) = exp(sum_{n>=1} p_n a^n / n).  Three routes produce
GQ_lambda for a strict partition lambda:

  * gq_pfaffian_1 contracts pairs of one-row coefficients through the
    f-coefficient tables of module laurent and takes a Pfaffian;
  * gq_pfaffian_2 takes a Pfaffian of binomially twisted two-index values
    GQ_(a,b), themselves coefficients of the r = 2 kernel block;
  * gq_fermionic evaluates <0| e^{H^(beta)} prod_i (phi^(beta)_{lambda_i}
    e^Theta) |0> on the neutral-fermion Fock space.

The finite-variable symmetrization oracle (module oracle) referees all of
them through from_finite.  Note that GQ_emptyset is the constant 1 by the
empty-Pfaffian convention, while the z^0 coefficient of GQ(z) is a separate
computed object; the two are never interchanged even though the computed
value of the latter also comes out as 1.

check_kq_cancellation tests membership in the ring carved out by the
K-theoretic cancellation property: f(t, -t/(1+beta t), x_3, ...) does not
depend on t.
"""

from fractions import Fraction
from functools import lru_cache

from . import fock
from .finitevars import eval_finite
from .hexpansion import HBraExpansion
from .laurent import f_table, kernel_coefficient
from .partitions import check_partition
from .pfaffian import pfaffian_from_upper
from .pseries import PSeries, z_exp
from .scalars import BetaScalar, ONE, binom_general


@lru_cache(maxsize=None)
def _exp_parts(degree_bound):
    """z^0..z^D coefficients of theta(z) / (theta(-beta) theta(-z-beta)).

    The log has z^j coefficient sum_n (p_n/n) [(-1)^{n+1} C(n,j) beta^{n-j}],
    plus p_n/n at j = n from theta(z) and a second (-1)^{n+1} beta^n / n at
    j = 0 from 1/theta(-beta).  The z^j part has lowest p-weight >= j, so
    cutting z-degrees and p-weights at D together loses nothing that the
    assembled GQ_n (n <= D) could see.
    """
    D = degree_bound
    ex = [PSeries.zero(D) for _ in range(D + 1)]
    for n in range(1, D + 1):
        pn = PSeries.p(n, D)
        w = Fraction(1 if n % 2 else -1, n)
        for j in range(n + 1):
            ex[j] = ex[j] + pn * BetaScalar.beta_power(n - j, w * binom_general(n, j))
        ex[0] = ex[0] + pn * BetaScalar.beta_power(n, w)
        ex[n] = ex[n] + pn * Fraction(1, n)
    return tuple(z_exp(ex))


class GQSeries:
    """Laurent coefficients of GQ(z), one PSeries per exponent.

    coefficients maps n -> GQ_n for n_min <= n <= degree_bound.  Above the
    bound GQ_n has lowest degree n > D and truncates to zero, so
    coefficient() answers zero without storing anything; below n_min the
    instance extends itself on demand.  Invariants, checked in tests:
    lowest degree of GQ_n is >= max(n, 0), and at x = 0 the value is
    (-beta)^{-n} for n <= 0 and 0 for n >= 1.
    """

    __slots__ = ("degree_bound", "n_min", "coefficients")

    def __init__(self, degree_bound, n_min):
        if degree_bound < 0:
            raise ValueError("degree bound must be nonnegative")
        self.degree_bound = degree_bound
        self.n_min = n_min
        self.coefficients = {}
        for n in range(n_min, degree_bound + 1):
            self.coefficients[n] = self._assemble(n)

    def _assemble(self, n):
        # GQ_n = sum_k (-beta)^k Exp_{n+k}, k from max(0, -n); Exp_j for
        # j > D has lowest p-weight > D, so the sum stops at k = D - n.
        D = self.degree_bound
        parts = _exp_parts(D)
        acc = PSeries.zero(D)
        for k in range(max(0, -n), D - n + 1):
            acc = acc + parts[n + k] * BetaScalar.beta_power(k, -1 if k % 2 else 1)
        return acc

    def coefficient(self, n):
        if n > self.degree_bound:
            return PSeries.zero(self.degree_bound)
        if n < self.n_min:
            for m in range(self.n_min - 1, n - 1, -1):
                self.coefficients[m] = self._assemble(m)
            self.n_min = n
        return self.coefficients[n]


@lru_cache(maxsize=None)
def _shared_series(degree_bound):
    return GQSeries(degree_bound, -degree_bound)


def gq_series(degree_bound, n_min=None):
    """The GQSeries at this bound, computed down to n_min.

    Instances are shared per bound and extend downward on demand; the
    default n_min = -degree_bound already covers every index the Pfaffian
    windows can reach.
    """
    series = _shared_series(degree_bound)
    if n_min is not None and n_min < series.n_min:
        series.coefficient(n_min)
    return series


@lru_cache(maxsize=None)
def gq_two_index(a, b, degree_bound):
    """Two-index function GQ_(a,b), the r = 2 block of the Pfaffian routes.

    Defined as [z1^a z2^b] of

        (1 + beta z1^{-1})^{-1} GQ(z1) GQ(z2) (z1 - z2)/(z1 + z2 + beta)

    expanded with |z1| > |z2|.  For a > b >= 1 this is GQ_{(a,b)}; for
    general integers it is the raw entry the second Pfaffian formula
    consumes.  Every summand below has lowest degree >= a + b, so the
    result vanishes once a + b > D and the windows are exact.
    """
    D = degree_bound
    if a + b > D:
        return PSeries.zero(D)
    series = gq_series(D)
    acc = PSeries.zero(D)
    # z1-exponent bookkeeping: GQ_{a+s+mp} picks up (-beta)^s from the
    # prefactor and the kernel coefficient at z1^{-mp}; on the z2 side the
    # kernel contributes z2^q with 0 <= q <= mp against GQ_{b-q}.
    for s in range(max(-1, D - a) + 1):
        sc = BetaScalar.beta_power(s, -1 if s % 2 else 1)
        for mp in range(D - a - s + 1):
            gi = series.coefficient(a + s + mp)
            if gi.is_zero():
                continue
            for q in range(mp + 1):
                kc = kernel_coefficient(-mp, q)
                if not kc:
                    continue
                gj = series.coefficient(b - q)
                if not gj.is_zero():
                    acc = acc + gi * gj * (kc * sc)
    return acc


def _check_weight(lam, degree_bound):
    lam = check_partition(lam, strict=True)
    if sum(lam) > degree_bound:
        raise ValueError("degree bound is below |lambda|")
    return lam


def gq_pfaffian_1(lam, degree_bound):
    """GQ_lambda as a Pfaffian of f-table contractions of one-row series.

    Rows of odd-length partitions are padded with a zero part; the extra
    column contracts against the univariate table.  The window p <= D -
    lambda_i is exact because GQ_n is zero past the bound; tests re-run
    one entry with a doubled window to confirm that.
    """
    lam = _check_weight(lam, degree_bound)
    D = degree_bound
    one = PSeries.one(D)
    r = len(lam)
    if r == 0:
        return one
    rp = r + r % 2
    parts = lam + (0,) * (rp - r)
    series = gq_series(D)
    upper = {}
    for i in range(1, rp + 1):
        li = parts[i - 1]
        for j in range(i + 1, rp + 1):
            lj = parts[j - 1]
            acc = PSeries.zero(D)
            if j == r + 1:
                tab = f_table(i, j, r, rp, (D - li, 0))
                for p, c in tab.entries.items():
                    gi = series.coefficient(li + p)
                    if not gi.is_zero():
                        acc = acc + gi * c
            else:
                tab = f_table(i, j, r, rp, (D - li, D - lj))
                for (p, q), c in tab.entries.items():
                    gi = series.coefficient(li + p)
                    if gi.is_zero():
                        continue
                    gj = series.coefficient(lj + q)
                    if not gj.is_zero():
                        acc = acc + gi * gj * c
            upper[(i - 1, j - 1)] = acc
    return pfaffian_from_upper(upper, one=one)


def gq_pfaffian_2(lam, degree_bound):
    """GQ_lambda as a Pfaffian over binomially twisted two-index values.

    Entry (i, j) is sum_{k,l >= 0} C(i+1-r', k) C(j-r', l) beta^{k+l}
    GQ_(lambda_i+k, lambda_j+l); the padding column drops the second
    factor.  Since GQ_(a,b) vanishes for a + b > D, the window stops at
    k + l = D - lambda_i - lambda_j.
    """
    lam = _check_weight(lam, degree_bound)
    D = degree_bound
    r = len(lam)
    if r == 0:
        return PSeries.one(D)
    rp = r + r % 2
    parts = lam + (0,) * (rp - r)
    series = gq_series(D)
    upper = {}
    for i in range(1, rp + 1):
        li = parts[i - 1]
        for j in range(i + 1, rp + 1):
            lj = parts[j - 1]
            acc = PSeries.zero(D)
            if j == r + 1:
                for k in range(D - li + 1):
                    c = binom_general(i + 1 - rp, k)
                    if c:
                        acc = acc + series.coefficient(li + k) * BetaScalar.beta_power(k, c)
            else:
                for k in range(D - li - lj + 1):
                    ck = binom_general(i + 1 - rp, k)
                    if not ck:
                        continue
                    for l in range(D - li - lj - k + 1):
                        cl = binom_general(j - rp, l)
                        if not cl:
                            continue
                        val = gq_two_index(li + k, lj + l, D)
                        if not val.is_zero():
                            acc = acc + val * BetaScalar.beta_power(k + l, ck * cl)
            upper[(i - 1, j - 1)] = acc
    return pfaffian_from_upper(upper, one=PSeries.one(D))


def gq_fermionic(lam, degree_bound):
    """GQ_lambda = <0| e^{H^(beta)} prod_i phi^(beta)_{lambda_i} e^Theta |0>.

    The vacuum bra of e^{H^(beta)} expands into classical-Q-weighted row
    words (HBraExpansion, paren flavor); each row word is pushed through
    the operator product and only its empty-word component survives
    against |0>.  Odd-length partitions get the usual phi^(beta)_0 e^Theta
    padding factor on the right.
    """
    lam = _check_weight(lam, degree_bound)
    D = degree_bound
    ops = list(lam) + ([0] if len(lam) % 2 else [])
    total = PSeries.zero(D)
    for word, weight in HBraExpansion(D, "paren").rows.items():
        state = {word: ONE}
        for n in ops:
            state = fock.bra_apply_phi_beta(state, n)
            state = fock.bra_apply_theta_exp(state)
        val = state.get(())
        if val:
            total = total + weight * val
    return total


def check_kq_cancellation(f, degree_bound, nvars):
    """Does f have the K-theoretic cancellation property, up to the bound?

    Evaluates f in nvars variables, substitutes x_1 = t and
    x_2 = -t/(1 + beta t), clears (1 + beta t)^D, and subtracts the t = 0
    value times the same clearing factor.  A source monomial of x-degree m
    only produces cleared monomials of total (t, x)-degree >= m, so the
    coefficients at total degree <= D are exactly determined by f and must
    all vanish; heavier ones belong to the discarded part of the series
    and are ignored.  Returns True iff every trusted coefficient is zero.

    f must carry every degree up to the bound (f.degree_bound >= D), and
    nvars >= D + 2 keeps the remaining-variable window faithful.
    """
    D = degree_bound
    if nvars < D + 2:
        raise ValueError("need nvars >= degree_bound + 2")
    if f.degree_bound < D:
        raise ValueError("f is truncated below the requested bound")
    g = eval_finite(f, nvars)
    cleared = {}
    for exps, c in g.terms.items():
        m = sum(exps)
        if m > D:
            continue
        tpow = exps[0] + exps[1]
        if tpow == 0:
            # t-free sources cancel exactly against the t = 0 part
            continue
        if len(c.den) > 1:
            raise ArithmeticError("coefficient with a beta denominator")
        tail = exps[2:]
        sgn = -1 if exps[1] % 2 else 1
        # t^{e0} tbar^{e1} -> (-1)^{e1} t^{e0+e1} (1+beta t)^{D-e1};
        # binomial index j beyond D - m leaves the trusted zone.
        for j in range(D - m + 1):
            cb = binom_general(D - exps[1], j)
            key = (tpow + j, tail)
            add = c * BetaScalar.beta_power(j, cb * sgn)
            prev = cleared.get(key)
            cleared[key] = add if prev is None else prev + add
    return not any(cleared.values())
