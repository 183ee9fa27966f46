"""Field backends: exact rationals and tolerance-based complex numbers.

Values themselves are plain ``Fraction`` or ``complex`` objects; a field object
supplies the comparisons, roots and orbit-representative choices that depend
on which backend is in use.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import cmp_to_key
from numbers import Rational

import mpmath
import numpy as np

from . import upoly


class NotRepresentable(ArithmeticError):
    """A required root is irrational, so it has no exact rational value.

    ``factor`` holds the obstructing polynomial as coefficients, lowest degree
    first.
    """

    def __init__(self, factor, message=None):
        self.factor = tuple(factor)
        super().__init__(message or f"roots of {upoly.to_str(self.factor)} are not rational")


class AllZero(ValueError):
    """Every coefficient vanished, so every value is a root."""


class InvalidInput(ValueError):
    pass


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise InvalidInput(f"not a number: {x!r}")
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInput(f"bad rational {x!r}") from exc
    if isinstance(x, float):
        return Fraction(x)
    raise InvalidInput(f"not a rational: {x!r}")


class ExactField:
    name = "exact"
    native = Fraction
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, x) -> Fraction:
        return to_fraction(x)

    def is_zero(self, x) -> bool:
        return x == 0

    def eq(self, a, b) -> bool:
        return a == b

    def key(self, x):
        return x

    def compare(self, a, b) -> int:
        return (a > b) - (a < b)

    def sqrt(self, x) -> Fraction:
        x = Fraction(x)
        if x < 0:
            raise NotRepresentable((-x, 0, 1))
        n, d = x.numerator, x.denominator
        rn, rd = math.isqrt(n), math.isqrt(d)
        if rn * rn != n or rd * rd != d:
            raise NotRepresentable((-x, 0, 1))
        return Fraction(rn, rd)

    def cubic_roots(self, a3, a2, a1, a0) -> list:
        return exact_roots([Fraction(a0), Fraction(a1), Fraction(a2), Fraction(a3)])

    def sign_rep(self, a):
        return abs(Fraction(a))

    def inverse_rep(self, a):
        a = Fraction(a)
        if a == 0 or a == 1:
            raise InvalidInput("inverse representative needs a value outside {0, 1}")
        if abs(a) > 1 or a == -1:
            return a
        return 1 / a

    def __repr__(self):
        return "ExactField()"


class NumericField:
    name = "numeric"
    native = complex
    zero = 0j
    one = 1 + 0j

    def __init__(self, eps: float = 1e-9):
        if not eps > 0:
            raise InvalidInput("tolerance must be positive")
        self.eps = float(eps)

    def coerce(self, x) -> complex:
        if isinstance(x, (list, tuple)) and len(x) == 2:
            return complex(float(to_fraction(x[0])), float(to_fraction(x[1])))
        if isinstance(x, str):
            try:
                return complex(float(Fraction(x)))
            except ValueError:
                return complex(x.replace(" ", ""))
        return complex(x)

    def is_zero(self, x) -> bool:
        return abs(x) <= self.eps

    def eq(self, a, b) -> bool:
        return abs(a - b) <= self.eps

    def key(self, x):
        x = complex(x)
        return (x.real, x.imag)

    def compare(self, a, b) -> int:
        """Lexicographic (Re, Im) comparison where parts within eps count as equal."""
        a, b = complex(a), complex(b)
        for x, y in ((a.real, b.real), (a.imag, b.imag)):
            if abs(x - y) > self.eps:
                return -1 if x < y else 1
        return 0

    def sqrt(self, x) -> complex:
        return cmath.sqrt(complex(x))

    def cubic_roots(self, a3, a2, a1, a0) -> list:
        coeffs = [complex(a3), complex(a2), complex(a1), complex(a0)]
        while coeffs and abs(coeffs[0]) <= self.eps:
            coeffs.pop(0)
        if not coeffs:
            raise AllZero("all coefficients vanish")
        if len(coeffs) == 1:
            return []
        return sorted((complex(r) for r in np.roots(coeffs)), key=self.key)

    def sign_rep(self, a):
        a = complex(a)
        if a.real > self.eps or (abs(a.real) <= self.eps and a.imag >= -self.eps):
            return a
        return -a

    def inverse_rep(self, a):
        a = complex(a)
        if abs(a) <= self.eps or abs(a - 1) <= self.eps:
            raise InvalidInput("inverse representative needs a value outside {0, 1}")
        r = abs(a)
        if r > 1 + self.eps:
            return a
        if r < 1 - self.eps:
            return 1 / a
        # on the unit circle: keep the upper half, with -1 included
        if a.imag > self.eps or (abs(a.imag) <= self.eps and a.real < 0):
            return a
        return 1 / a

    def __repr__(self):
        return f"NumericField(eps={self.eps!r})"


EXACT = ExactField()
NUMERIC = NumericField()


def field_for(backend: str = "exact", tol: float | None = None):
    if backend == "exact":
        return EXACT
    if backend == "numeric":
        return NumericField(tol) if tol is not None else NUMERIC
    raise InvalidInput(f"unknown backend {backend!r}")


# -- exact root finding -----------------------------------------------------

def _snap(poly, scaled) -> Fraction | None:
    """Test the integers next to ``scaled`` as numerators over the leading coefficient.

    Any rational root p/q in lowest terms has q dividing the leading
    coefficient, so ``lead * root`` is an integer.
    """
    lead = poly[-1]
    for n in (scaled, scaled - 1, scaled + 1):
        r = Fraction(n, lead)
        if upoly.evaluate(poly, r) == 0:
            return r
    return None


def _find_rational_root(poly) -> Fraction | None:
    """A rational root of a squarefree integer polynomial of degree 3, or None."""
    lead = poly[-1]
    for r in np.roots([float(c) for c in reversed(poly)]):
        if abs(r.imag) <= 1e-6 * (1 + abs(r)):
            found = _snap(poly, round(r.real * lead))
            if found is not None:
                return found
    # numpy loses digits on large coefficients; redo the search at high precision
    digits = max(len(str(abs(c))) for c in poly)
    with mpmath.workdps(2 * digits + 30):
        try:
            approx = mpmath.polyroots([int(c) for c in reversed(poly)], maxsteps=400, extraprec=4 * digits + 60)
        except mpmath.libmp.NoConvergence as exc:
            raise ArithmeticError(f"root search did not converge for {upoly.to_str(poly)}") from exc
        for r in approx:
            found = _snap(poly, int(mpmath.nint(mpmath.re(r) * lead)))
            if found is not None:
                return found
    return None


def exact_roots(poly) -> list:
    """Rational roots with multiplicity of a polynomial given low degree first.

    Raises NotRepresentable when some root is irrational and AllZero for the
    zero polynomial.
    """
    poly = upoly.trim([Fraction(c) for c in poly])
    if not poly:
        raise AllZero("all coefficients vanish")
    if len(poly) - 1 > 3:
        raise InvalidInput("degree above 3")
    roots = []
    work = poly
    # repeated roots of a cubic or quadratic over the rationals are rational
    g = upoly.gcd(work, upoly.derivative(work))
    while len(g) > 1:
        if len(g) == 2:
            r = -g[0] / g[1]
        else:
            r = -g[1] / (2 * g[2])
        while len(work) > 1 and upoly.evaluate(work, r) == 0:
            work = upoly.deflate(work, r)
            roots.append(r)
        g = upoly.gcd(work, upoly.derivative(work))
    while len(work) > 1:
        deg = len(work) - 1
        if deg == 1:
            roots.append(-work[0] / work[1])
            break
        if deg == 2:
            c, b, a = work
            try:
                s = EXACT.sqrt(b * b - 4 * a * c)
            except NotRepresentable:
                raise NotRepresentable(work) from None
            roots.extend([(-b - s) / (2 * a), (-b + s) / (2 * a)])
            break
        r = _find_rational_root(upoly.integer_scaled(work))
        if r is None:
            raise NotRepresentable(work)
        roots.append(r)
        work = upoly.deflate(work, r)
    return sorted(roots)


def cubic_roots(a3, a2, a1, a0, field=EXACT) -> list:
    """Roots of a3 t^3 + a2 t^2 + a1 t + a0 available in the field."""
    return field.cubic_roots(a3, a2, a1, a0)


def sign_representative(a, field=EXACT):
    return field.sign_rep(a)


def inverse_representative(a, field=EXACT):
    return field.inverse_rep(a)


def total_order_key(a, field=EXACT):
    return field.key(a)


def u_representative(pair, field=EXACT):
    """Representative of the orbit {(a, b), (1 - a + b, b)}."""
    a, b = pair
    other = 1 - a + b
    if field.compare(other, a) < 0:
        return (other, b)
    return (a, b)


def pair_key(pair, field=EXACT):
    return (field.key(pair[0]), field.key(pair[1]))


def pair_compare(p, q, field=EXACT) -> int:
    return field.compare(p[0], q[0]) or field.compare(p[1], q[1])


def pair_eq(p, q, field=EXACT) -> bool:
    return field.eq(p[0], q[0]) and field.eq(p[1], q[1])


def v_representative(triple, field=EXACT):
    """Representative of the S3-orbit of a triple of pairs.

    Sorted order, except that a duplicated pair is moved to the front so a
    distinct first two entries never share a value with the third.
    """
    a, b, c = sorted(triple, key=cmp_to_key(lambda p, q: pair_compare(p, q, field)))
    if pair_eq(b, c, field) and not pair_eq(a, b, field):
        return (b, c, a)
    return (a, b, c)
