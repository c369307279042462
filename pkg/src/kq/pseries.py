"""Truncated symmetric functions in the power-sum basis over Q(b).

A PSeries stores finitely many coefficients c_lambda of sum c_lambda p_lambda
together with a degree bound D: the object represents its class modulo
(terms of degree > D), where deg p_lambda = |lambda|.  All arithmetic
truncates at D, so the bound is part of the value and mixed-bound arithmetic
is a bug (it raises).
"""

from __future__ import annotations

from fractions import Fraction

from .partitions import check_partition, graded_key, merge
from .scalars import BetaScalar, ONE, ZERO


def _coeff(v) -> BetaScalar:
    return v if isinstance(v, BetaScalar) else BetaScalar(v)


class PSeries:
    __slots__ = ("terms", "degree_bound")

    def __init__(self, terms, degree_bound: int):
        if degree_bound < 0:
            raise ValueError("degree bound must be >= 0")
        self.degree_bound = degree_bound
        clean: dict[tuple[int, ...], BetaScalar] = {}
        for key, val in terms.items():
            key = check_partition(key)
            if sum(key) > degree_bound:
                continue
            val = _coeff(val)
            if val:
                clean[key] = val
        self.terms = clean

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, degree_bound: int) -> "PSeries":
        return cls({}, degree_bound)

    @classmethod
    def one(cls, degree_bound: int) -> "PSeries":
        return cls({(): ONE}, degree_bound)

    @classmethod
    def p(cls, n: int, degree_bound: int) -> "PSeries":
        """The power sum p_n."""
        if n < 1:
            raise ValueError("power sums are indexed by positive integers")
        return cls({(n,): ONE}, degree_bound)

    @classmethod
    def constant(cls, c, degree_bound: int) -> "PSeries":
        return cls({(): _coeff(c)}, degree_bound)

    # -- structure ------------------------------------------------------

    def coefficient(self, key) -> BetaScalar:
        return self.terms.get(check_partition(key), ZERO)

    def is_zero(self) -> bool:
        return not self.terms

    def lowest_degree(self) -> int | None:
        if not self.terms:
            return None
        return min(sum(k) for k in self.terms)

    def top_degree(self) -> int | None:
        if not self.terms:
            return None
        return max(sum(k) for k in self.terms)

    def homogeneous_part(self, d: int) -> "PSeries":
        return PSeries({k: v for k, v in self.terms.items() if sum(k) == d},
                       self.degree_bound)

    def truncate(self, new_bound: int) -> "PSeries":
        if new_bound > self.degree_bound:
            raise ValueError("cannot raise a degree bound after the fact")
        return PSeries(self.terms, new_bound)

    def _check_bound(self, other: "PSeries"):
        if self.degree_bound != other.degree_bound:
            raise ValueError(
                f"degree bounds differ: {self.degree_bound} vs {other.degree_bound}")

    # -- ring operations -------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction, BetaScalar)):
            other = PSeries.constant(other, self.degree_bound)
        if not isinstance(other, PSeries):
            return NotImplemented
        self._check_bound(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k, ZERO) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return PSeries(out, self.degree_bound)

    __radd__ = __add__

    def __neg__(self):
        return PSeries({k: -v for k, v in self.terms.items()}, self.degree_bound)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, BetaScalar)):
            other = PSeries.constant(other, self.degree_bound)
        if not isinstance(other, PSeries):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, BetaScalar)):
            c = _coeff(other)
            if not c:
                return PSeries.zero(self.degree_bound)
            return PSeries({k: v * c for k, v in self.terms.items()},
                           self.degree_bound)
        if not isinstance(other, PSeries):
            return NotImplemented
        self._check_bound(other)
        bound = self.degree_bound
        out: dict[tuple[int, ...], BetaScalar] = {}
        for ka, va in self.terms.items():
            da = sum(ka)
            for kb, vb in other.terms.items():
                if da + sum(kb) > bound:
                    continue
                k = merge(ka, kb)
                s = out.get(k, ZERO) + va * vb
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return PSeries(out, bound)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers of a series are not defined here")
        out = PSeries.one(self.degree_bound)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, BetaScalar)):
            other = PSeries.constant(other, self.degree_bound)
        if not isinstance(other, PSeries):
            return NotImplemented
        return self.degree_bound == other.degree_bound and self.terms == other.terms

    def __hash__(self):
        return hash((self.degree_bound, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # -- analytic-style helpers -------------------------------------------

    def exp(self) -> "PSeries":
        """exp of a series with no constant term (checked)."""
        if () in self.terms:
            raise ValueError("exp needs a series with zero constant term")
        out = PSeries.one(self.degree_bound)
        power = PSeries.one(self.degree_bound)
        kfac = 1
        for k in range(1, self.degree_bound + 1):
            power = power * self
            if power.is_zero():
                break
            kfac *= k
            out = out + power * Fraction(1, kfac)
        return out

    def specialize_beta(self, value) -> "PSeries":
        """Substitute a rational value for b in every coefficient."""
        return PSeries(
            {k: BetaScalar(v.specialize(value)) for k, v in self.terms.items()},
            self.degree_bound,
        )

    def substitute_power_sums(self, image) -> "PSeries":
        """Ring substitution p_n -> image(n); image returns a PSeries."""
        out = PSeries.zero(self.degree_bound)
        cache: dict[int, PSeries] = {}
        for key, val in self.terms.items():
            term = PSeries.constant(val, self.degree_bound)
            for part in key:
                if part not in cache:
                    img = image(part)
                    self._check_bound(img)
                    cache[part] = img
                term = term * cache[part]
            out = out + term
        return out

    # -- serialization and display -----------------------------------------

    def sorted_items(self):
        return sorted(self.terms.items(), key=lambda kv: graded_key(kv[0]))

    def to_json(self):
        return {
            "basis": "p",
            "degree_bound": self.degree_bound,
            "terms": [
                {"partition": list(k), "coeff": v.to_json()}
                for k, v in self.sorted_items()
            ],
        }

    @classmethod
    def from_json(cls, data) -> "PSeries":
        if data.get("basis") != "p":
            raise ValueError("unsupported basis tag")
        terms = {
            tuple(t["partition"]): BetaScalar.from_json(t["coeff"])
            for t in data["terms"]
        }
        return cls(terms, data["degree_bound"])

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for k, v in self.sorted_items():
            mon = "1" if not k else "p" + "".join(f"[{i}]" for i in k)
            vs = str(v)
            if ("+" in vs[1:]) or ("-" in vs[1:]) or "/" in vs:
                vs = f"({vs})"
            bits.append(vs + ("" if not k else "*" + mon))
        return " + ".join(bits).replace("+ -", "- ")

    __repr__ = __str__

    def latex(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for k, v in self.sorted_items():
            mon = "" if not k else "p_{" + ",".join(map(str, k)) + "}"
            bits.append(f"\\left({v.latex()}\\right) {mon}")
        return " + ".join(bits)


def pseries_basis_dump(f: PSeries):
    """(partition, coeff) rows in graded-lex order; used by golden tests."""
    return [(k, v) for k, v in f.sorted_items()]


def z_exp(parts):
    """Exponentiate sum_j parts[j] z^j within the same z-window.

    parts is a nonempty list of PSeries at one degree bound, each with zero
    constant term so the sum is nilpotent modulo the bound.  Returns the
    list of z^0..z^cap coefficients of the exponential, cap = len(parts)-1.
    """
    if not parts:
        raise ValueError("z_exp needs at least the z^0 slot")
    bound = parts[0].degree_bound
    cap = len(parts) - 1
    for f in parts:
        if () in f.terms:
            raise ValueError("z_exp needs coefficients with zero constant term")
    out = [PSeries.one(bound)] + [PSeries.zero(bound) for _ in range(cap)]
    term = list(out)
    for m in range(1, bound + 1):
        nxt = [PSeries.zero(bound) for _ in range(cap + 1)]
        for a, t in enumerate(term):
            if t.is_zero():
                continue
            for b in range(cap + 1 - a):
                if not parts[b].is_zero():
                    nxt[a + b] = nxt[a + b] + t * parts[b]
        term = [t * Fraction(1, m) for t in nxt]
        if all(t.is_zero() for t in term):
            break
        out = [s + t for s, t in zip(out, term)]
    return out
