"""Generator families: q_n, and the two deformed power-sum bases.

The q_n are the one-row Schur Q-functions, generated by
    sum q_n z^n = exp(2 sum_{n odd} p_n z^n / n).
The deformed bases are images of the power sums under the two substitutions
that control the K-theoretic family and its dual:
    paren:   p_n evaluated on x_i/(1 + (b/2) x_i)   (infinite upward tail)
    bracket: p_n shifted by b/2 in each letter      (finite downward sum)
Both are unitriangular over the p basis, one from below, one from above,
which is what makes exact basis conversion possible degree by degree.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .partitions import graded_key
from .pseries import PSeries
from .scalars import BetaScalar, binom_general

FLAVORS = ("paren", "bracket")


def q_series(degree_bound: int) -> list[PSeries]:
    """[q_0, q_1, ..., q_bound], each exact (they are homogeneous)."""
    out = [PSeries.one(degree_bound)]
    for n in range(1, degree_bound + 1):
        # n E_n = sum_{k odd} 2 p_k E_{n-k}, from E' = A' E
        acc = PSeries.zero(degree_bound)
        for k in range(1, n + 1, 2):
            acc = acc + PSeries.p(k, degree_bound) * out[n - k] * 2
        out.append(acc * Fraction(1, n))
    return out


def p_beta(n: int, degree_bound: int) -> PSeries:
    """Deformed power sum, paren flavor: p_n + higher-degree corrections."""
    if n < 1:
        raise ValueError("power sums are indexed by positive integers")
    terms = {}
    for m in range(n, degree_bound + 1):
        c = binom_general(m - 1, m - n) * Fraction(1, 2) ** (m - n)
        if (m - n) % 2:
            c = -c
        terms[(m,)] = BetaScalar.beta_power(m - n, c)
    return PSeries(terms, degree_bound)


def p_bracket(n: int, degree_bound: int | None = None) -> PSeries:
    """Deformed power sum, bracket flavor: p_n + lower-degree corrections.

    This one is a finite polynomial; the default bound is its own degree.
    """
    if n < 1:
        raise ValueError("power sums are indexed by positive integers")
    if degree_bound is None:
        degree_bound = n
    terms = {}
    for i in range(1, n + 1):
        c = binom_general(n, i) * Fraction(1, 2) ** (n - i)
        terms[(i,)] = BetaScalar.beta_power(n - i, c)
    return PSeries(terms, degree_bound)


@lru_cache(maxsize=None)
def _image_part(flavor: str, n: int, degree_bound: int) -> PSeries:
    if flavor == "paren":
        return p_beta(n, degree_bound)
    if flavor == "bracket":
        return p_bracket(n, degree_bound)
    raise ValueError(f"unknown flavor {flavor!r}, expected one of {FLAVORS}")


@lru_cache(maxsize=None)
def _image_partition(flavor: str, key: tuple[int, ...], degree_bound: int) -> PSeries:
    if not key:
        return PSeries.one(degree_bound)
    return (_image_partition(flavor, key[:-1], degree_bound)
            * _image_part(flavor, key[-1], degree_bound))


def from_deformed_basis(coeffs, flavor: str, degree_bound: int) -> PSeries:
    """sum coeffs[lambda] * (deformed p_lambda), as an ordinary PSeries."""
    out = PSeries.zero(degree_bound)
    for key, val in coeffs.items():
        out = out + _image_partition(flavor, tuple(key), degree_bound) * val
    return out


def to_deformed_basis(f: PSeries, flavor: str) -> dict[tuple[int, ...], BetaScalar]:
    """Coordinates of f in the deformed power-sum basis of the given flavor.

    Exact modulo the degree bound: paren images only feed upward in degree
    and bracket images only feed downward, so one sweep in the right
    direction eliminates everything.
    """
    if flavor not in FLAVORS:
        raise ValueError(f"unknown flavor {flavor!r}, expected one of {FLAVORS}")
    bound = f.degree_bound
    degrees = range(bound + 1) if flavor == "paren" else range(bound, -1, -1)
    rep = f
    out: dict[tuple[int, ...], BetaScalar] = {}
    for d in degrees:
        level = [(k, v) for k, v in rep.terms.items() if sum(k) == d]
        if not level:
            continue
        correction = PSeries.zero(bound)
        for key, val in level:
            out[key] = val
            correction = correction + _image_partition(flavor, key, bound) * val
        rep = rep - correction
    assert rep.is_zero(), "triangular elimination left a residue"
    return {k: v for k, v in sorted(out.items(), key=lambda kv: graded_key(kv[0])) if v}
