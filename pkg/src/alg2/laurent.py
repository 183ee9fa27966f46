"""Laurent polynomials in one variable t with exact rational coefficients."""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from . import upoly


class NotLaurent(ArithmeticError):
    """A quotient that is not itself a Laurent polynomial."""


class Laurent:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for e, c in (terms or {}).items():
            if c != 0:
                clean[int(e)] = Fraction(c)
        self.terms = clean

    @classmethod
    def const(cls, c):
        return cls({0: c})

    @classmethod
    def t(cls, power=1):
        return cls({power: 1})

    @staticmethod
    def lift(x):
        if isinstance(x, Laurent):
            return x
        if isinstance(x, (Rational, int)):
            return Laurent({0: x})
        return NotImplemented

    # arithmetic
    def __add__(self, other):
        other = Laurent.lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Laurent(out)

    __radd__ = __add__

    def __neg__(self):
        return Laurent({e: -c for e, c in self.terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = Laurent.lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return Laurent.lift(other) - self

    def __mul__(self, other):
        other = Laurent.lift(other)
        if other is NotImplemented:
            return other
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return Laurent(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = Laurent.lift(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            raise ZeroDivisionError("division by the zero Laurent polynomial")
        if len(other.terms) == 1:
            (e, c), = other.terms.items()
            return Laurent({k - e: v / c for k, v in self.terms.items()})
        if not self.terms:
            return Laurent()
        # shift both to ordinary polynomials and divide exactly
        a_low, b_low = self.low, other.low
        num = self.shifted_coeffs()
        den = other.shifted_coeffs()
        q, r = upoly.divmod_(num, den)
        if r:
            raise NotLaurent(f"({self}) / ({other}) is not a Laurent polynomial")
        return Laurent({i + a_low - b_low: c for i, c in enumerate(q)})

    def __rtruediv__(self, other):
        return Laurent.lift(other) / self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return Laurent.const(1) / (self ** (-n))
        out = Laurent.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        other = Laurent.lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # inspection
    @property
    def low(self):
        return min(self.terms) if self.terms else 0

    @property
    def high(self):
        return max(self.terms) if self.terms else 0

    def is_zero(self):
        return not self.terms

    def is_polynomial(self):
        return self.low >= 0

    def shifted_coeffs(self):
        low = self.low
        out = [Fraction(0)] * (self.high - low + 1)
        for e, c in self.terms.items():
            out[e - low] = c
        return out

    def at_zero(self):
        if not self.is_polynomial():
            raise ValueError("negative powers of t; no value at t = 0")
        return self.terms.get(0, Fraction(0))

    def __call__(self, x):
        return sum((c * Fraction(x) ** e for e, c in self.terms.items()), Fraction(0))

    def __repr__(self):
        return f"Laurent({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
            if mono and c == 1:
                parts.append(mono)
            elif mono and c == -1:
                parts.append("-" + mono)
            elif mono:
                parts.append(f"{c}*{mono}")
            else:
                parts.append(str(c))
        return " + ".join(parts).replace("+ -", "- ")


T = Laurent.t()


class LaurentField:
    """Field-like adapter so Structures with Laurent entries can be compared."""

    name = "laurent"
    native = Laurent
    zero = Laurent()
    one = Laurent.const(1)

    def coerce(self, x):
        return Laurent.lift(Fraction(x) if isinstance(x, str) else x)

    def is_zero(self, x):
        return Laurent.lift(x).is_zero()

    def eq(self, a, b):
        return Laurent.lift(a) == Laurent.lift(b)


LAURENT = LaurentField()
