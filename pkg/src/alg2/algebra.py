"""Bilinear products on a 2-dimensional space and their basic invariants."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .scalars import EXACT, AllZero

KEYS = ("c11_1", "c11_2", "c12_1", "c12_2", "c21_1", "c21_2", "c22_1", "c22_2")
INDEX = tuple((i, j, k) for i in (1, 2) for j in (1, 2) for k in (1, 2))


def _pos(i, j, k):
    return 4 * (i - 1) + 2 * (j - 1) + (k - 1)


class Structure:
    """Structure constants c_ij^k with e_i e_j = c_ij^1 e1 + c_ij^2 e2.

    Entries are stored flat in the order of ``KEYS`` after coercion into the
    field (rationals, complex numbers, Laurent polynomials).
    """

    __slots__ = ("c", "field")

    def __init__(self, c, field=EXACT):
        c = tuple(c)
        if len(c) != 8:
            raise ValueError("a structure needs exactly 8 constants")
        native, coerce = field.native, field.coerce
        self.c = tuple(x if type(x) is native else coerce(x) for x in c)
        self.field = field

    @classmethod
    def from_products(cls, e11, e12, e21, e22, field=EXACT):
        """Build from the four products e1e1, e1e2, e2e1, e2e2 as coordinate pairs."""
        return cls((*e11, *e12, *e21, *e22), field)

    @classmethod
    def from_dict(cls, d, field=EXACT):
        return cls([field.coerce(d[k]) for k in KEYS], field)

    @classmethod
    def zero(cls, field=EXACT):
        return cls([field.zero] * 8, field)

    def __getitem__(self, ijk):
        return self.c[_pos(*ijk)]

    def product(self, i, j):
        p = _pos(i, j, 1)
        return self.c[p], self.c[p + 1]

    def as_dict(self):
        return dict(zip(KEYS, self.c))

    def map(self, f, field=None):
        """Apply f entry-wise; pass ``field`` when f changes the kind of entry."""
        return Structure([f(x) for x in self.c], field or self.field)

    def is_zero(self):
        return all(self.field.is_zero(x) for x in self.c)

    def __eq__(self, other):
        if not isinstance(other, Structure):
            return NotImplemented
        return all(self.field.eq(a, b) for a, b in zip(self.c, other.c))

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        body = ", ".join(f"{k}={v}" for k, v in zip(KEYS, self.c))
        return f"Structure({body})"


def multiply(mu: Structure, x, y):
    """The product of two coordinate vectors."""
    out0 = out1 = 0
    for i in (1, 2):
        for j in (1, 2):
            w = x[i - 1] * y[j - 1]
            if w == 0:
                continue
            a, b = mu.product(i, j)
            out0 = out0 + w * a
            out1 = out1 + w * b
    return (out0, out1)


def in_basis(mu: Structure, basis) -> Structure:
    """Constants of mu with respect to the basis whose columns are given by ``basis``."""
    u, v = linalg.columns(basis)
    inv = linalg.inv2(basis)
    vecs = (u, v)
    c = []
    for i in (0, 1):
        for j in (0, 1):
            c.extend(linalg.matvec2(inv, multiply(mu, vecs[i], vecs[j])))
    return Structure(c, mu.field)


def act(g, mu: Structure) -> Structure:
    """The structure g*mu with (g*mu)(x, y) = g mu(g^-1 x, g^-1 y)."""
    return in_basis(mu, linalg.inv2(g))


# -- idempotents and 2-nil elements ----------------------------------------

@dataclass(frozen=True)
class Idempotents:
    """Nonzero idempotents: a finite list, or the affine line {x : form(x) = 1}."""

    kind: str  # "finite" or "line"
    vectors: tuple = ()
    form: tuple | None = None

    def __len__(self):
        if self.kind == "line":
            raise TypeError("infinitely many idempotents")
        return len(self.vectors)


@dataclass(frozen=True)
class NilLines:
    """Lines of elements squaring to zero: Empty, One, Two or All."""

    kind: str
    lines: tuple = ()

    @property
    def count(self):
        return {"Empty": 0, "One": 1, "Two": 2}.get(self.kind)


def square_form(mu: Structure):
    """Coefficients of x^2 for x = s e1 + t e2, as two quadratic forms in (s, t).

    Each form is (coefficient of s^2, of st, of t^2).
    """
    q1 = (mu[1, 1, 1], mu[1, 2, 1] + mu[2, 1, 1], mu[2, 2, 1])
    q2 = (mu[1, 1, 2], mu[1, 2, 2] + mu[2, 1, 2], mu[2, 2, 2])
    return q1, q2


def dependence_cubic(mu: Structure):
    """Coefficients (a3, a2, a1, a0) of det(x, x^2) for x = r e1 + e2.

    Its roots r give the directions x with x and x^2 linearly dependent; the
    direction e1 also qualifies when the cubic drops degree.
    """
    q1, q2 = square_form(mu)
    # det [[r, 1], [Q1, Q2]] = r*Q2 - Q1 with Q evaluated at (r, 1)
    return (q2[0], q2[1] - q1[0], q2[2] - q1[1], -q1[2])


def _dedupe(vals, field):
    out = []
    for v in vals:
        if not any(_close(v, w, field) for w in out):
            out.append(v)
    return out


def _close(a, b, field):
    if field.name == "exact":
        return a == b
    # numeric multiple roots spread by about eps^(1/m)
    return abs(a - b) <= max(field.eps ** (1 / 3), field.eps) * (1 + abs(a))


def special_directions(mu: Structure):
    """Directions x with x, x^2 dependent, each paired with lambda in x^2 = lambda x.

    Returns None when every direction qualifies (x^2 is always a multiple of x).
    """
    field = mu.field
    a3, a2, a1, a0 = dependence_cubic(mu)
    try:
        roots = field.cubic_roots(a3, a2, a1, a0)
    except AllZero:
        return None
    dirs = [(r, field.one) for r in _dedupe(roots, field)]
    if field.is_zero(a3):
        dirs.insert(0, (field.one, field.zero))
    out = []
    for x in dirs:
        sq = multiply(mu, x, x)
        lam = sq[0] / x[0] if not field.is_zero(x[0]) else sq[1] / x[1]
        out.append((x, lam))
    return out


def linear_factor(mu: Structure):
    """When x^2 = L(x) x for all x, the coefficients of L."""
    q1, _ = square_form(mu)
    return (q1[0], q1[1])


def idempotents(mu: Structure) -> Idempotents:
    field = mu.field
    dirs = special_directions(mu)
    if dirs is None:
        form = linear_factor(mu)
        if all(field.is_zero(x) for x in form):
            return Idempotents("finite", ())
        return Idempotents("line", (), form)
    vecs = []
    for x, lam in dirs:
        if not field.is_zero(lam):
            vecs.append((x[0] / lam, x[1] / lam))
    vecs.sort(key=lambda v: (field.key(v[0]), field.key(v[1])))
    return Idempotents("finite", tuple(vecs))


def two_nil_lines(mu: Structure) -> NilLines:
    field = mu.field
    dirs = special_directions(mu)
    if dirs is None:
        a, b = linear_factor(mu)
        if field.is_zero(a) and field.is_zero(b):
            return NilLines("All")
        return NilLines("One", ((-b, a),))
    lines = tuple(x for x, lam in dirs if field.is_zero(lam))
    return NilLines(("Empty", "One", "Two")[len(lines)], lines)


# -- linear invariants ------------------------------------------------------

def derivation_rows(mu: Structure):
    """Linear system for derivations D, unknowns d_kj with D(e_j) = sum_k d_kj e_k."""
    zero = mu.field.zero
    rows = []
    unknowns = [(k, j) for k in (1, 2) for j in (1, 2)]
    for i in (1, 2):
        for j in (1, 2):
            for k in (1, 2):
                row = {u: zero for u in unknowns}
                # D(e_i e_j)_k
                for m in (1, 2):
                    row[(k, m)] += mu[i, j, m]
                # - (D e_i) e_j - e_i (D e_j), component k
                for m in (1, 2):
                    row[(m, i)] -= mu[m, j, k]
                    row[(m, j)] -= mu[i, m, k]
                rows.append([row[u] for u in unknowns])
    return rows


def derivation_dimension(mu: Structure) -> int:
    return 4 - linalg.rank(derivation_rows(mu), mu.field)


def square_dimension(mu: Structure) -> int:
    return linalg.rank([mu.product(i, j) for i in (1, 2) for j in (1, 2)], mu.field)


def annihilator_dimension(mu: Structure) -> int:
    rows = []
    for j in (1, 2):
        for k in (1, 2):
            rows.append([mu[1, j, k], mu[2, j, k]])  # x e_j
            rows.append([mu[j, 1, k], mu[j, 2, k]])  # e_j x
    return 2 - linalg.rank(rows, mu.field)


def generates_line(mu: Structure, x) -> bool:
    """Whether x and x^2 are linearly dependent."""
    sq = multiply(mu, x, x)
    return mu.field.is_zero(x[0] * sq[1] - x[1] * sq[0])
