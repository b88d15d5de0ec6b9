"""Exact Laurent polynomials in a fractional power of q.

A value stores a denominator ``d`` and a map ``k -> c`` meaning ``c * q^(k/d)``.
Coefficients are Python ints so nothing ever overflows.
"""

from __future__ import annotations

import cmath
import re
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping


class NotDivisible(ArithmeticError):
    """Raised by exact_div when the Laurent remainder is nonzero."""

    def __init__(self, remainder: "QLaurent", message: str = "not divisible"):
        super().__init__(f"{message}; remainder {remainder}")
        self.remainder = remainder


def _reduce(denom: int, terms: dict[int, int]) -> tuple[int, dict[int, int]]:
    g = denom
    for k in terms:
        g = gcd(g, k)
        if g == 1:
            break
    if g > 1:
        return denom // g, {k // g: c for k, c in terms.items()}
    return denom, terms


class QLaurent:
    __slots__ = ("denom", "terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None, denom: int = 1):
        if denom <= 0:
            raise ValueError("denominator must be positive")
        clean = {int(k): int(c) for k, c in (terms or {}).items() if c}
        self.denom, self.terms = _reduce(int(denom), clean)
        self._hash = None

    # construction helpers
    @classmethod
    def const(cls, c: int) -> "QLaurent":
        return cls({0: c})

    @classmethod
    def monomial(cls, exponent, coeff: int = 1) -> "QLaurent":
        """coeff * q^exponent, exponent an int or Fraction."""
        e = Fraction(exponent)
        return cls({e.numerator: coeff}, e.denominator)

    @classmethod
    def zero(cls) -> "QLaurent":
        return cls()

    @classmethod
    def one(cls) -> "QLaurent":
        return cls({0: 1})

    # basic queries
    def is_zero(self) -> bool:
        return not self.terms

    def exponents(self) -> list[Fraction]:
        return [Fraction(k, self.denom) for k in sorted(self.terms)]

    def items(self) -> list[tuple[Fraction, int]]:
        """(exponent, coefficient) pairs ascending by exponent."""
        return [(Fraction(k, self.denom), self.terms[k]) for k in sorted(self.terms)]

    def coeff(self, exponent) -> int:
        e = Fraction(exponent) * self.denom
        if e.denominator != 1:
            return 0
        return self.terms.get(e.numerator, 0)

    def min_exponent(self) -> Fraction:
        return Fraction(min(self.terms), self.denom)

    def max_exponent(self) -> Fraction:
        return Fraction(max(self.terms), self.denom)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def rescaled(self, denom: int) -> dict[int, int]:
        """Term map over the finer lattice (1/denom)Z; denom must be a multiple of self.denom."""
        f, r = divmod(denom, self.denom)
        if r:
            raise ValueError("target denominator must be a multiple")
        return {k * f: c for k, c in self.terms.items()}

    # ring operations
    @staticmethod
    def _coerce(other) -> "QLaurent":
        if isinstance(other, QLaurent):
            return other
        if isinstance(other, int):
            return QLaurent.const(other)
        return NotImplemented

    def _common(self, other: "QLaurent") -> tuple[int, dict[int, int], dict[int, int]]:
        d = lcm(self.denom, other.denom)
        return d, self.rescaled(d), other.rescaled(d)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d, a, b = self._common(other)
        out = dict(a)
        for k, c in b.items():
            out[k] = out.get(k, 0) + c
        return QLaurent(out, d)

    __radd__ = __add__

    def __neg__(self):
        return QLaurent({k: -c for k, c in self.terms.items()}, self.denom)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d, a, b = self._common(other)
        out: dict[int, int] = {}
        for ka, ca in a.items():
            for kb, cb in b.items():
                k = ka + kb
                out[k] = out.get(k, 0) + ca * cb
        return QLaurent(out, d)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise ArithmeticError("only monomials have Laurent inverses")
            return self.inverse() ** (-k)
        result = QLaurent.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "QLaurent":
        """Inverse of a unit monomial (+-q^a)."""
        if not self.is_monomial():
            raise ArithmeticError(f"{self} is not invertible in the Laurent ring")
        (k, c), = self.terms.items()
        if c not in (1, -1):
            raise ArithmeticError(f"{self} is not invertible over the integers")
        return QLaurent({-k: c}, self.denom)

    def scale_by_power(self, exponent) -> "QLaurent":
        """Multiply by q^exponent."""
        return self * QLaurent.monomial(exponent)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.denom == other.denom and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.denom, frozenset(self.terms.items())))
        return self._hash

    # symmetry
    def substitute_inverse(self) -> "QLaurent":
        """q -> q^{-1}."""
        return QLaurent({-k: c for k, c in self.terms.items()}, self.denom)

    def is_symmetric(self) -> bool:
        return all(self.terms.get(-k) == c for k, c in self.terms.items())

    def palindromic_shift(self) -> Fraction | None:
        """alpha with q^{-alpha} * self symmetric; None for zero or non-palindromic input."""
        if not self.terms:
            return None
        lo, hi = min(self.terms), max(self.terms)
        alpha = Fraction(lo + hi, 2 * self.denom)
        if self.scale_by_power(-alpha).is_symmetric():
            return alpha
        return None

    # evaluation
    def eval_complex(self, q0: complex, root: complex | None = None) -> complex:
        """Value at q = q0.

        ``root`` fixes the branch of q0^(1/d); the principal branch is used otherwise.
        """
        if q0 == 0:
            raise ZeroDivisionError("cannot evaluate a Laurent polynomial at q=0")
        if not self.terms:
            return 0j
        t = root if root is not None else (q0 if self.denom == 1 else cmath.exp(cmath.log(q0) / self.denom))
        lo, hi = min(self.terms), max(self.terms)
        acc = 0j
        for k in range(hi, lo - 1, -1):
            acc = acc * t + self.terms.get(k, 0)
        return acc * t ** lo

    def eval_at_one(self) -> int:
        return sum(self.terms.values())

    def derivs_at_one(self) -> tuple[Fraction, Fraction, Fraction]:
        """(f(1), f'(1), f''(1)) as exact rationals."""
        v = d1 = d2 = Fraction(0)
        for k, c in self.terms.items():
            e = Fraction(k, self.denom)
            v += c
            d1 += c * e
            d2 += c * e * (e - 1)
        return v, d1, d2

    def derivative_complex(self, q0: complex) -> complex:
        """First derivative at q0 (principal branch for fractional exponents)."""
        acc = 0j
        for k, c in self.terms.items():
            e = k / self.denom
            acc += c * e * cmath.exp((e - 1) * cmath.log(q0))
        return acc

    # division
    def exact_div(self, other: "QLaurent") -> "QLaurent":
        """Quotient a/b when the Laurent remainder is zero, else NotDivisible."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return QLaurent()
        d, a, b = self._common(other)
        # work with b as an ordinary polynomial in t = q^(1/d) with nonzero constant term
        blo = min(b)
        bpoly = {k - blo: c for k, c in b.items()}
        bdeg = max(bpoly)
        blead = bpoly[bdeg]
        rem = {k - blo: c for k, c in a.items()}
        floor = min(rem)
        quot: dict[int, int] = {}
        while rem:
            top = max(rem)
            shift = top - bdeg
            qc, r = divmod(rem[top], blead)
            if shift < floor or r:
                break
            quot[shift] = qc
            for k, bc in bpoly.items():
                kk = k + shift
                v = rem.get(kk, 0) - qc * bc
                if v:
                    rem[kk] = v
                else:
                    rem.pop(kk, None)
        if rem:
            raise NotDivisible(QLaurent({k + blo: c for k, c in rem.items()}, d))
        return QLaurent(quot, d)

    def divides_by(self, other: "QLaurent") -> bool:
        try:
            self.exact_div(other)
            return True
        except NotDivisible:
            return False

    # text / json
    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"QLaurent({self.to_text()!r})"

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms):
            c = self.terms[k]
            if self.denom == 1:
                parts.append(f"{c}*q^{k}")
            else:
                parts.append(f"{c}*q^({k}/{self.denom})")
        return " + ".join(parts)

    _TERM = re.compile(r"^\s*([+-]?\d+)\s*\*\s*q\^\(?\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*\)?\s*$")

    @classmethod
    def from_text(cls, text: str) -> "QLaurent":
        text = text.strip()
        if text == "0":
            return cls()
        out = cls()
        for chunk in text.split(" + "):
            m = cls._TERM.match(chunk)
            if not m:
                raise ValueError(f"cannot parse Laurent term {chunk!r}")
            c, k, d = int(m.group(1)), int(m.group(2)), int(m.group(3) or 1)
            out = out + cls({k: c}, d)
        return out

    def to_json(self) -> dict:
        return {"denom": self.denom, "terms": [[k, str(self.terms[k])] for k in sorted(self.terms)]}

    @classmethod
    def from_json(cls, obj: Mapping) -> "QLaurent":
        return cls({int(k): int(c) for k, c in obj["terms"]}, int(obj.get("denom", 1)))


Q = QLaurent.monomial(1)
ONE = QLaurent.one()
ZERO = QLaurent.zero()


def q_power(exponent) -> QLaurent:
    return QLaurent.monomial(exponent)


def qint(k: int) -> QLaurent:
    """Quantum integer [k] = q^{1-k} + q^{3-k} + ... + q^{k-1}."""
    if k < 0:
        raise ValueError("quantum integers are defined here for k >= 0")
    return QLaurent({-k - 1 + 2 * i: 1 for i in range(1, k + 1)})


def qfact(k: int) -> QLaurent:
    out = QLaurent.one()
    for j in range(1, k + 1):
        out = out * qint(j)
    return out


def qbinom(m: int, k: int) -> QLaurent:
    if not 0 <= k <= m:
        raise ValueError("need 0 <= k <= m")
    return qfact(m).exact_div(qfact(k) * qfact(m - k))


def laurent_sum(values: Iterable[QLaurent]) -> QLaurent:
    """Sum of many values, accumulated in one dict."""
    acc: dict[int, int] = {}
    d = 1
    vals = list(values)
    for v in vals:
        d = lcm(d, v.denom)
    for v in vals:
        for k, c in v.rescaled(d).items():
            acc[k] = acc.get(k, 0) + c
    return QLaurent(acc, d)
