"""Exact scalar arithmetic in the deformation parameter.

The ground ring for everything in this package is Q(b): rational functions
in a single formal parameter b (the K-theory deformation).  Setting b = 0
recovers the classical (cohomological) objects, b = -1 the connective ones.

A BetaScalar is a reduced fraction of dense Q[b] polynomials with a monic
denominator, so equality is structural and hashing is safe.  Almost every
scalar that actually occurs is a polynomial; the rational-function generality
exists for intermediate values (matrix elimination, specializations).
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

Rational = Fraction

# -- dense Q[b] helpers ------------------------------------------------------
# polynomials are tuples of Fraction, index = exponent, no trailing zeros

_ZERO: tuple[Fraction, ...] = ()
_ONE: tuple[Fraction, ...] = (Fraction(1),)


def _trim(c: list[Fraction]) -> tuple[Fraction, ...]:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _padd(a, b):
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] += x
    return _trim(out)


def _pneg(a):
    return tuple(-x for x in a)


def _pmul(a, b):
    if not a or not b:
        return _ZERO
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return _trim(out)


def _pscale(a, s: Fraction):
    if not s:
        return _ZERO
    return tuple(x * s for x in a)


def _pdivmod(a, b):
    """Division with remainder in Q[b].  b must be nonzero."""
    assert b, "division by the zero polynomial"
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    inv = 1 / b[-1]
    while len(r) >= len(b):
        c = r[-1] * inv
        if c:
            q[len(r) - len(b)] = c
            for i, y in enumerate(b):
                r[len(r) - len(b) + i] -= c * y
        # top coefficient is now exactly zero
        r.pop()
        while r and r[-1] == 0:
            r.pop()
        if not r:
            break
    return _trim(q), _trim(r)


def _pgcd(a, b):
    while b:
        a, b = b, _pdivmod(a, b)[1]
    if a:
        a = _pscale(a, 1 / a[-1])  # monic representative
    return a


def _peval(a, v: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * v + c
    return acc


class BetaScalar:
    """An element of Q(b), stored as num/den with den monic and gcd 1."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=None):
        if isinstance(num, BetaScalar):
            assert den is None
            self.num, self.den = num.num, num.den
            self._hash = None
            return
        num = self._coerce_poly(num)
        den = _ONE if den is None else self._coerce_poly(den)
        if not den:
            raise ZeroDivisionError("zero denominator in BetaScalar")
        if not num:
            self.num, self.den = _ZERO, _ONE
            self._hash = None
            return
        g = _pgcd(num, den)
        if len(g) > 1:
            num = _pdivmod(num, g)[0]
            den = _pdivmod(den, g)[0]
        lead = den[-1]
        if lead != 1:
            num = _pscale(num, 1 / lead)
            den = _pscale(den, 1 / lead)
        self.num, self.den = num, den
        self._hash = None

    @staticmethod
    def _coerce_poly(v) -> tuple[Fraction, ...]:
        if isinstance(v, tuple):
            return _trim([Fraction(x) for x in v])
        if isinstance(v, (int, Fraction)):
            v = Fraction(v)
            return (v,) if v else _ZERO
        raise TypeError(f"cannot build BetaScalar from {type(v).__name__}")

    # -- constructors --------------------------------------------------------

    @classmethod
    def beta_power(cls, k: int, coeff=1) -> "BetaScalar":
        """coeff * b^k as a scalar; k must be >= 0."""
        assert k >= 0
        c = Fraction(coeff)
        if not c:
            return cls(0)
        return cls((Fraction(0),) * k + (c,))

    # -- predicates ----------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.num)

    def is_rational(self) -> bool:
        return len(self.num) <= 1 and self.den == _ONE

    def is_polynomial(self) -> bool:
        return self.den == _ONE

    def as_polynomial(self) -> tuple[Fraction, ...]:
        if self.den != _ONE:
            raise ValueError(f"{self} is not a polynomial in b")
        return self.num

    def as_rational(self) -> Fraction:
        p = self.as_polynomial()
        if len(p) > 1:
            raise ValueError(f"{self} depends on b")
        return p[0] if p else Fraction(0)

    # -- ring operations -----------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return BetaScalar(_padd(self.num, other.num), self.den)
        return BetaScalar(
            _padd(_pmul(self.num, other.den), _pmul(other.num, self.den)),
            _pmul(self.den, other.den),
        )

    __radd__ = __add__

    def __neg__(self):
        return BetaScalar(_pneg(self.num), self.den)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return BetaScalar(_pmul(self.num, other.num), _pmul(self.den, other.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.num:
            raise ZeroDivisionError("division by zero BetaScalar")
        return BetaScalar(_pmul(self.num, other.den), _pmul(self.den, other.num))

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, k: int):
        if k < 0:
            return (ONE / self) ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    # -- specialization and display -----------------------------------------

    def specialize(self, value) -> Fraction:
        """Evaluate at a rational b = value.  Raises on a denominator zero."""
        value = Fraction(value)
        d = _peval(self.den, value)
        if d == 0:
            raise ZeroDivisionError(f"denominator vanishes at b = {value}")
        return _peval(self.num, value) / d

    def beta_degree(self) -> int:
        """Degree of the numerator minus degree of the denominator; -1 for 0."""
        if not self.num:
            return -1
        return (len(self.num) - 1) - (len(self.den) - 1)

    @staticmethod
    def _poly_str(p, symbol="b") -> str:
        if not p:
            return "0"
        bits = []
        for e, c in enumerate(p):
            if not c:
                continue
            if e == 0:
                bits.append(str(c))
            else:
                head = "" if c == 1 else ("-" if c == -1 else f"{c}*")
                bits.append(f"{head}{symbol}" + (f"^{e}" if e > 1 else ""))
        out = " + ".join(bits)
        return out.replace("+ -", "- ")

    def __str__(self):
        ns = self._poly_str(self.num)
        if self.den == _ONE:
            return ns
        return f"({ns})/({self._poly_str(self.den)})"

    __repr__ = __str__

    def latex(self) -> str:
        ns = self._poly_str(self.num, symbol="\\beta")
        if self.den == _ONE:
            return ns
        return "\\frac{%s}{%s}" % (ns, self._poly_str(self.den, symbol="\\beta"))

    # -- JSON ------------------------------------------------------------

    def to_json(self):
        return {
            "num": [[e, str(c)] for e, c in enumerate(self.num) if c],
            "den": [[e, str(c)] for e, c in enumerate(self.den) if c],
        }

    @classmethod
    def from_json(cls, data) -> "BetaScalar":
        def build(entries):
            if not entries:
                return _ZERO
            top = max(e for e, _ in entries)
            out = [Fraction(0)] * (top + 1)
            for e, c in entries:
                out[e] = Fraction(c)
            return _trim(out)

        return cls(build(data["num"]), build(data["den"]))


def _coerce(v):
    if isinstance(v, BetaScalar):
        return v
    if isinstance(v, (int, Fraction)):
        return BetaScalar(v)
    return NotImplemented


ZERO = BetaScalar(0)
ONE = BetaScalar(1)
BETA = BetaScalar.beta_power(1)


def binom_general(a, k: int) -> Fraction:
    """Binomial coefficient C(a, k) for arbitrary integer or rational a.

    C(a, k) = a(a-1)...(a-k+1)/k! for k >= 0, and 0 for k < 0.  Negative
    upper entries follow the usual reflection C(-n, k) = (-1)^k C(n+k-1, k).
    """
    if k < 0:
        return Fraction(0)
    if isinstance(a, int) and a >= 0:
        return Fraction(comb(a, k))
    a = Fraction(a)
    out = Fraction(1)
    for i in range(k):
        out *= (a - i)
        out /= i + 1
    return out


def expand_binomial_power(k: int, order: int) -> list[BetaScalar]:
    """Coefficients of (1 + b t)^k in t, up to and including t^order.

    k may be negative (geometric-type expansion).  Entry j is C(k, j) b^j.
    """
    assert order >= 0
    out = []
    for j in range(order + 1):
        c = binom_general(k, j)
        out.append(BetaScalar.beta_power(j, c) if c else ZERO)
    return out
