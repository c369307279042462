"""Neutral fermions phi_n with [phi_m, phi_n]_+ = 2(-1)^m delta_{m+n,0}.

States are sparse dicts mapping canonical words to scalars.  A bra word is a
strictly decreasing tuple of nonpositive integers (<0| phi_{m_1} ... phi_{m_k}
with 0 >= m_1 > ... > m_k); a ket word is strictly decreasing nonnegative
(phi_{n_1} ... phi_{n_k} |0> with n_1 > ... > n_k >= 0).  phi_0 squares to 1,
every other mode squares to 0, <0|phi_n = 0 for n > 0 and phi_{-n}|0> = 0 for
n > 0; <0|phi_0|0> = 0.

Infinite operator tails (the beta-deformed modes, the theta exponentials)
truncate exactly by grading: a bra word of grade s is killed by any phi_m
with s + m > 0, and a ket word of grade s by any phi_{-m} with m > s.
Heisenberg generators b_m exist for odd m only; b_0 is not normal-ordered
and is rejected.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .scalars import BetaScalar, ONE, ZERO, binom_general

BraState = dict  # canonical bra word -> BetaScalar
KetState = dict  # canonical ket word -> BetaScalar

_HALF = Fraction(1, 2)


def _merge(target, word, coeff):
    if not coeff:
        return
    prev = target.get(word)
    total = coeff if prev is None else prev + coeff
    if total:
        target[word] = total
    elif prev is not None:
        del target[word]


def vacuum_bra() -> BraState:
    return {(): ONE}


def vacuum_ket() -> KetState:
    return {(): ONE}


def grade(word) -> int:
    return sum(word)


# -- canonical insertions ---------------------------------------------------

@lru_cache(maxsize=None)
def _bra_insert(word, n):
    """<0| word phi_n in canonical form, as {word: rational coefficient}."""
    if not word:
        return {(n,): 1} if n <= 0 else {}
    if word[-1] > n:
        return {word + (n,): 1}
    if word[-1] == n:
        return {word[:-1]: 1} if n == 0 else {}
    m = word[-1]
    out = {}
    for w, c in _bra_insert(word[:-1], n).items():
        out[w + (m,)] = -c
    if m + n == 0:
        prev = out.get(word[:-1], 0)
        out[word[:-1]] = prev + (2 if m % 2 == 0 else -2)
    return {w: c for w, c in out.items() if c}


@lru_cache(maxsize=None)
def _ket_insert(n, word):
    """phi_n word |0> in canonical form."""
    if not word:
        return {(n,): 1} if n >= 0 else {}
    if n > word[0]:
        return {(n,) + word: 1}
    if n == word[0]:
        return {word[1:]: 1} if n == 0 else {}
    m = word[0]
    out = {}
    for w, c in _ket_insert(n, word[1:]).items():
        out[(m,) + w] = -c
    if m + n == 0:
        prev = out.get(word[1:], 0)
        out[word[1:]] = prev + (2 if n % 2 == 0 else -2)
    return {w: c for w, c in out.items() if c}


def bra_apply_phi(state: BraState, n: int) -> BraState:
    out = {}
    for word, coeff in state.items():
        for w, c in _bra_insert(word, n).items():
            _merge(out, w, coeff * c)
    return out


def ket_apply_phi(state: KetState, n: int) -> KetState:
    out = {}
    for word, coeff in state.items():
        for w, c in _ket_insert(n, word).items():
            _merge(out, w, coeff * c)
    return out


# -- beta-deformed modes ----------------------------------------------------

def _phi_beta_modes(n, cutoff, sign):
    """(index, coefficient) pairs of phi^(beta)_n, plain modes <= cutoff.

    For n >= 0 the series sum_{m>=n} C(m,n) (b/2)^{m-n} phi_m ascends without
    bound; the caller supplies the grading cutoff.  sign=-1 flips beta.
    """
    half = _HALF if sign > 0 else -_HALF
    if n >= 0:
        for m in range(n, cutoff + 1):
            yield m, BetaScalar.beta_power(m - n, binom_general(m, n) * half ** (m - n))
    else:
        for m in range(1, -n + 1):
            c = binom_general(-m, -n - m)
            if c:
                yield -m, BetaScalar.beta_power(-n - m, c * half ** (-n - m))


def bra_apply_phi_beta(state: BraState, n: int, sign: int = 1) -> BraState:
    """Right action of phi^(beta)_n (or phi^(-beta)_n with sign=-1)."""
    out = {}
    for word, coeff in state.items():
        for m, scal in _phi_beta_modes(n, -grade(word), sign):
            for w, c in _bra_insert(word, m).items():
                _merge(out, w, coeff * scal * c)
    return out


def bra_apply_phihat_star(state: BraState, n: int) -> BraState:
    """(phi-hat_n)^* = (-1)^n phi^(-beta)_{-n} acting on bra states."""
    out = bra_apply_phi_beta(state, -n, sign=-1)
    if n % 2:
        out = {w: -c for w, c in out.items()}
    return out


def _phihat_modes(n, cutoff):
    """(index, coefficient) pairs of phi-hat_n with plain modes >= -cutoff."""
    if n > 0:
        for m in range(1, n + 1):
            c = binom_general(-m, n - m)
            if c:
                yield m, BetaScalar.beta_power(n - m, c * _HALF ** (n - m))
    elif n == 0:
        for m in range(0, cutoff + 1):
            yield -m, BetaScalar.beta_power(m, _HALF ** m)
    else:
        k = -n
        for m in range(k, cutoff + 1):
            yield -m, BetaScalar.beta_power(m - k, binom_general(m, k) * _HALF ** (m - k))


def ket_apply_phihat(state: KetState, n: int) -> KetState:
    """Left action of the dual deformed mode phi-hat_n on ket states."""
    out = {}
    for word, coeff in state.items():
        for m, scal in _phihat_modes(n, grade(word)):
            for w, c in _ket_insert(m, word).items():
                _merge(out, w, coeff * scal * c)
    return out


# -- Heisenberg generators --------------------------------------------------

def _check_heisenberg_index(m):
    if m % 2 == 0:
        raise ValueError("b_m is defined for odd m only")


@lru_cache(maxsize=None)
def _bra_vacuum_b(m):
    """<0| b_m as a state; (1/4) sum_{i=-m}^{0} (-1)^i <0| phi_{-i-m} phi_i."""
    if m < 0:
        return {}
    out = {}
    quarter = Fraction(1, 4)
    for i in range(-m, 1):
        sgn = quarter if i % 2 == 0 else -quarter
        for w, c in _bra_insert((), -i - m).items():
            for w2, c2 in _bra_insert(w, i).items():
                _merge(out, w2, BetaScalar(sgn * c * c2))
    return out


@lru_cache(maxsize=None)
def _ket_vacuum_b(m):
    """b_m |0> as a state; nonzero only for m < 0."""
    if m > 0:
        return {}
    out = {}
    quarter = Fraction(1, 4)
    for i in range(0, -m + 1):
        sgn = quarter if i % 2 == 0 else -quarter
        inner = _ket_insert(i, ())
        for w, c in inner.items():
            for w2, c2 in _ket_insert(-i - m, w).items():
                _merge(out, w2, BetaScalar(sgn * c * c2))
    return out


@lru_cache(maxsize=None)
def _bra_word_b(word, m):
    """<0| word b_m via [b_m, phi_n] = phi_{n-m}, peeling from the right."""
    if not word:
        return _bra_vacuum_b(m)
    head, n = word[:-1], word[-1]
    out = {}
    for w, c in _bra_word_b(head, m).items():
        for w2, c2 in _bra_insert(w, n).items():
            _merge(out, w2, c * c2)
    for w, c in _bra_insert(head, n - m).items():
        _merge(out, w, BetaScalar(-c))
    return out


@lru_cache(maxsize=None)
def _ket_word_b(m, word):
    """b_m word |0>, peeling from the left."""
    if not word:
        return _ket_vacuum_b(m)
    n, tail = word[0], word[1:]
    out = {}
    for w, c in _ket_word_b(m, tail).items():
        for w2, c2 in _ket_insert(n, w).items():
            _merge(out, w2, c * c2)
    for w, c in _ket_insert(n - m, tail).items():
        _merge(out, w, BetaScalar(c))
    return out


def bra_apply_b(state: BraState, m: int) -> BraState:
    _check_heisenberg_index(m)
    out = {}
    for word, coeff in state.items():
        for w, c in _bra_word_b(word, m).items():
            _merge(out, w, coeff * c)
    return out


def ket_apply_b(state: KetState, m: int) -> KetState:
    _check_heisenberg_index(m)
    out = {}
    for word, coeff in state.items():
        for w, c in _ket_word_b(m, word).items():
            _merge(out, w, coeff * c)
    return out


# -- theta exponentials -----------------------------------------------------
#
# Theta = 2 sum_{n odd>0} (beta/2)^n b_{-n}/n raises bra grades toward zero,
# its adjoint theta = Theta^* does the same for ket grades, so both
# exponentials terminate on every state.

def _apply_theta_once(state, sign, bra_side):
    out = {}
    for word, coeff in state.items():
        bound = -grade(word) if bra_side else grade(word)
        for n in range(1, bound + 1, 2):
            scal = BetaScalar.beta_power(n, Fraction(sign, n * 2 ** (n - 1)))
            src = _bra_word_b(word, -n) if bra_side else _ket_word_b(n, word)
            for w, c in src.items():
                _merge(out, w, coeff * scal * c)
    return out


def _theta_exp(state, sign, bra_side):
    total = dict(state)
    term = state
    k = 1
    while term:
        term = _apply_theta_once(term, sign, bra_side)
        if not term:
            break
        term = {w: c / k for w, c in term.items()}
        for w, c in term.items():
            _merge(total, w, c)
        k += 1
    return total


def bra_apply_theta_exp(state: BraState, sign: int = 1) -> BraState:
    """Right action of e^{Theta} (sign=+1) or e^{-Theta} (sign=-1)."""
    return _theta_exp(state, sign, bra_side=True)


def ket_apply_theta_exp(state: KetState, sign: int = 1) -> KetState:
    """Left action of e^{theta} (sign=+1) or e^{-theta} (sign=-1)."""
    return _theta_exp(state, sign, bra_side=False)


# -- duality and pairing ----------------------------------------------------

def star_bra(state: BraState) -> KetState:
    """<0|phi_{m_1}..phi_{m_k}  |->  (-1)^{sum m} phi_{-m_k}..phi_{-m_1}|0>."""
    out = {}
    for word, coeff in state.items():
        new = tuple(-m for m in reversed(word))
        _merge(out, new, -coeff if grade(word) % 2 else coeff)
    return out


def star_ket(state: KetState) -> BraState:
    out = {}
    for word, coeff in state.items():
        new = tuple(-m for m in reversed(word))
        _merge(out, new, -coeff if grade(word) % 2 else coeff)
    return out


def pair(bra: BraState, ket: KetState) -> BetaScalar:
    """Vacuum expectation <w|v>; this is where <0|phi_0|0> = 0 lives."""
    total = ZERO
    for kword, kcoeff in ket.items():
        folded = bra
        for n in kword:
            folded = bra_apply_phi(folded, n)
            if not folded:
                break
        else:
            c = folded.get(())
            if c is not None:
                total = total + kcoeff * c
    return total


def vev_direct(letters) -> BetaScalar:
    """<0| phi_{n_1} ... phi_{n_k} |0> by normal ordering, no Pfaffian."""
    state = vacuum_bra()
    for n in letters:
        state = bra_apply_phi(state, n)
        if not state:
            return ZERO
    c = state.get(())
    return c if c is not None else ZERO


def two_point(a: int, b: int):
    """<0| phi_a phi_b |0>."""
    if a == b == 0:
        return Fraction(1)
    if a + b == 0 and a < 0:
        return Fraction(2 if a % 2 == 0 else -2)
    return Fraction(0)


def wick_expectation(letters) -> BetaScalar:
    """<0| phi_{n_1} ... phi_{n_{2r}} |0> as the Pfaffian of two-points."""
    letters = tuple(letters)
    if len(letters) % 2:
        return ZERO
    from .pfaffian import pfaffian_from_upper
    upper = {}
    for i in range(len(letters)):
        for j in range(i + 1, len(letters)):
            upper[(i, j)] = two_point(letters[i], letters[j])
    return BetaScalar(pfaffian_from_upper(upper, one=Fraction(1)))
