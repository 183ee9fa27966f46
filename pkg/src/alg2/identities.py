"""Polynomial identities of nonassociative products, checked by formal expansion.

An identity such as ``(xy)x = x(yx)`` is parsed into two product trees. Each
variable is replaced by a generic vector with formal coordinates, both sides
are expanded into polynomials in those coordinates using the structure
constants, and the identity holds iff all coefficients agree.
"""
from __future__ import annotations

from dataclasses import dataclass

from .algebra import Structure


class IdentitySyntaxError(ValueError):
    pass


# -- terms ------------------------------------------------------------------

@dataclass(frozen=True)
class Term:
    """A variable name (left only), a product of two terms, or the zero term."""

    var: str | None = None
    left: "Term | None" = None
    right: "Term | None" = None

    @property
    def is_zero(self):
        return self.var is None and self.left is None

    def variables(self):
        if self.var is not None:
            return {self.var}
        if self.left is None:
            return set()
        return self.left.variables() | self.right.variables()

    def __str__(self):
        if self.var is not None:
            return self.var
        if self.left is None:
            return "0"
        wrap = lambda t: str(t) if t.var is not None else f"({t})"
        return wrap(self.left) + wrap(self.right)


ZERO = Term()


def _parse_term(text: str) -> Term:
    pos = 0

    def atom():
        nonlocal pos
        if pos >= len(text):
            raise IdentitySyntaxError(f"unexpected end of {text!r}")
        ch = text[pos]
        if ch == "(":
            pos += 1
            t = term()
            if pos >= len(text) or text[pos] != ")":
                raise IdentitySyntaxError(f"missing ')' in {text!r}")
            pos += 1
            return t
        if ch.isalpha() and ch.islower():
            pos += 1
            return Term(var=ch)
        raise IdentitySyntaxError(f"unexpected {ch!r} in {text!r}")

    def term():
        nonlocal pos
        first = atom()
        if pos < len(text) and text[pos] != ")":
            second = atom()
            if pos < len(text) and text[pos] != ")":
                raise IdentitySyntaxError(f"ambiguous product in {text!r}; add parentheses")
            return Term(left=first, right=second)
        return first

    text = text.replace(" ", "")
    if text == "0":
        return ZERO
    t = term()
    if pos != len(text):
        raise IdentitySyntaxError(f"trailing input in {text!r}")
    return t


@dataclass(frozen=True)
class Identity:
    lhs: Term
    rhs: Term

    @classmethod
    def parse(cls, text: str) -> "Identity":
        if text.count("=") != 1:
            raise IdentitySyntaxError(f"expected exactly one '=' in {text!r}")
        a, b = text.split("=")
        return cls(_parse_term(a), _parse_term(b))

    def variables(self):
        return sorted(self.lhs.variables() | self.rhs.variables())

    def __str__(self):
        return f"{self.lhs} = {self.rhs}"


COMMUTATIVE = Identity.parse("xy = yx")
ANTICOMMUTATIVE = Identity.parse("xx = 0")
FLEXIBLE = Identity.parse("(xy)x = x(yx)")
LEFT_COMMUTATIVE = Identity.parse("x(yz) = y(xz)")
RIGHT_COMMUTATIVE = Identity.parse("(xy)z = (xz)y")
BICOMMUTATIVE = (LEFT_COMMUTATIVE, RIGHT_COMMUTATIVE)

BUILTIN = {
    "commutative": COMMUTATIVE,
    "anticommutative": ANTICOMMUTATIVE,
    "flexible": FLEXIBLE,
    "left-commutative": LEFT_COMMUTATIVE,
    "right-commutative": RIGHT_COMMUTATIVE,
    "bicommutative": BICOMMUTATIVE,
}


# -- formal expansion -------------------------------------------------------
# A polynomial is a dict from exponent tuples to coefficients.

def _padd(p, q, sign=1):
    out = dict(p)
    for m, c in q.items():
        v = out.get(m, 0) + sign * c
        if v == 0:
            out.pop(m, None)
        else:
            out[m] = v
    return out


def _pmul(p, q):
    out = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = tuple(a + b for a, b in zip(m1, m2))
            v = out.get(m, 0) + c1 * c2
            if v == 0:
                out.pop(m, None)
            else:
                out[m] = v
    return out


def _pscale(p, c):
    if c == 0:
        return {}
    return {m: v * c for m, v in p.items()}


def _expand(term: Term, mu: Structure, coords):
    if term.var is not None:
        return coords[term.var]
    if term.left is None:
        return ({}, {})
    x = _expand(term.left, mu, coords)
    y = _expand(term.right, mu, coords)
    out = [{}, {}]
    for i in (1, 2):
        for j in (1, 2):
            xy = _pmul(x[i - 1], y[j - 1])
            if not xy:
                continue
            for k in (1, 2):
                out[k - 1] = _padd(out[k - 1], _pscale(xy, mu[i, j, k]))
    return tuple(out)


def expansion_difference(mu: Structure, identity: Identity):
    """Both coordinates of lhs - rhs, as polynomials in the formal coordinates."""
    names = identity.variables()
    nvars = 2 * len(names)
    coords = {}
    for n, name in enumerate(names):
        unit = lambda k: tuple(1 if t == k else 0 for t in range(nvars))
        coords[name] = ({unit(2 * n): 1}, {unit(2 * n + 1): 1})
    left = _expand(identity.lhs, mu, coords)
    right = _expand(identity.rhs, mu, coords)
    return tuple(_padd(left[k], right[k], -1) for k in (0, 1))


def satisfies_identity(mu: Structure, identity) -> bool:
    if isinstance(identity, str):
        identity = Identity.parse(identity)
    if isinstance(identity, (tuple, list)):
        return all(satisfies_identity(mu, i) for i in identity)
    diff = expansion_difference(mu, identity)
    return all(mu.field.is_zero(c) for part in diff for c in part.values())
