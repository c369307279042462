"""The vacuum row <0|e^H in the padded fermion basis, in closed form.

H is the half-boson Hamiltonian 2 sum_{n>=1} (p_n/n) b_n^flavor built from
either deformed family; reorganized over plain generators it reads
2 sum_{k odd} (p_k^flavor / k) b_k, so <0|e^H only involves even-length
words and the coefficient of the word dual to a strict partition mu is a
classical Schur Q-function evaluated at the deformed power sums:

    <0|e^H = sum_mu (-1)^{|mu|} 2^{-l(mu)} Q_mu(p^flavor) <word(mu)|

with word(mu) the reversed negated padding of mu.  Pairing a ket against
this row is therefore a finite weight lookup, which is how every symmetric
function in this package leaves Fock space.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .bases import from_deformed_basis, q_series
from .partitions import check_partition, strict_partitions_upto
from .pfaffian import pfaffian
from .pseries import PSeries
from .scalars import BetaScalar


@lru_cache(maxsize=None)
def _q_row(degree_bound: int):
    return q_series(degree_bound)


@lru_cache(maxsize=None)
def two_row_q(a: int, b: int, degree_bound: int) -> PSeries:
    """Classical Q_{(a,b)} in the power-sum basis, for a > b >= 0."""
    if not a > b >= 0:
        raise ValueError("two-row entries need a > b >= 0")
    q = _q_row(degree_bound)
    out = q[a] * q[b] if a <= degree_bound else PSeries.zero(degree_bound)
    for i in range(1, b + 1):
        if a + i > degree_bound:
            break
        term = q[a + i] * q[b - i] * 2
        out = out - term if i % 2 else out + term
    return out


@lru_cache(maxsize=None)
def classical_q(mu, degree_bound: int) -> PSeries:
    """Schur Q_mu in the power-sum basis via the two-row Pfaffian."""
    mu = check_partition(mu, strict=True)
    if not mu:
        return PSeries.one(degree_bound)
    if len(mu) == 1:
        return two_row_q(mu[0], 0, degree_bound)
    padded = mu if len(mu) % 2 == 0 else mu + (0,)
    n = len(padded)
    zero = PSeries.zero(degree_bound)
    matrix = [[zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            entry = two_row_q(padded[i], padded[j], degree_bound)
            matrix[i][j] = entry
            matrix[j][i] = -entry
    return pfaffian(matrix, one=PSeries.one(degree_bound))


def deformed_q(mu, flavor: str, degree_bound: int) -> PSeries:
    """Q_mu with every power sum replaced by its deformed image.

    Bracket images push weight downward, so the substitution must run at
    degree max(bound, |mu|) before truncating; paren images only feed
    upward and need no widening.
    """
    mu = check_partition(mu, strict=True)
    inner = degree_bound
    if flavor == "bracket":
        inner = max(degree_bound, sum(mu))
    coords = classical_q(mu, inner).terms
    image = from_deformed_basis(coords, flavor, inner)
    return image.truncate(degree_bound) if inner > degree_bound else image


def _strip_padding(word):
    return word[:-1] if word and word[-1] == 0 else word


def vacuum_expectation(ket_state, flavor: str, degree_bound: int) -> PSeries:
    """<0| e^H |v> for a ket state in the canonical padded basis.

    Odd-length words pair to zero; an even word w contributes
    coeff * Q_{mu(w)}(p^flavor), mu(w) the word with its padding removed.
    """
    out = PSeries.zero(degree_bound)
    for word, coeff in ket_state.items():
        if len(word) % 2:
            continue
        out = out + deformed_q(_strip_padding(word), flavor, degree_bound) * coeff
    return out


class HBraExpansion:
    """Rows of <0|e^H with weight |mu| <= row_bound, coefficients truncated.

    row_bound caps which basis rows are kept and degree_bound caps the
    power-sum degree of each coefficient; they agree for the upward-feeding
    paren flavor but the bracket flavor pushes weight downward, so exact
    low-degree output can require rows far above the degree bound.
    """

    def __init__(self, row_bound: int, flavor: str, degree_bound: int | None = None):
        if degree_bound is None:
            degree_bound = row_bound
        self.row_bound = row_bound
        self.flavor = flavor
        self.degree_bound = degree_bound
        self.rows = {}
        for mu in strict_partitions_upto(row_bound):
            padded = mu if len(mu) % 2 == 0 else mu + (0,)
            word = tuple(-m for m in reversed(padded))
            coeff = deformed_q(mu, flavor, degree_bound) * BetaScalar(
                Fraction(1, 2 ** len(mu))
            )
            if sum(mu) % 2:
                coeff = -coeff
            self.rows[word] = coeff

    def coefficient(self, word) -> PSeries:
        got = self.rows.get(tuple(word))
        return PSeries.zero(self.degree_bound) if got is None else got

    def expectation(self, ket_state) -> PSeries:
        """Pair against a ket; rows beyond row_bound must not be needed."""
        for word in ket_state:
            if len(word) % 2 == 0 and sum(word) > self.row_bound:
                raise ValueError(
                    f"ket reaches weight {sum(word)} beyond row bound {self.row_bound}"
                )
        return vacuum_expectation(ket_state, self.flavor, self.degree_bound)
