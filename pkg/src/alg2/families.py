"""The canonical structures, their parameter domains, and label parsing."""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .algebra import Structure
from .scalars import (
    EXACT,
    InvalidInput,
    pair_eq,
    u_representative,
    v_representative,
)


class InvalidLabel(ValueError):
    pass


def _e1(a, b, g, d):
    return ((1, 0), (a, b), (g, d), (0, 1))


def _a1(a):
    return ((1, 1), (0, a), (0, 1 - a), (0, 0))


def _a4(a):
    return ((a, 1), (1, a), (-1, 0), (0, 0))


def _b1(a):
    return ((0, 0), (1 - a, 1), (a, -1), (0, 0))


def _b2(a):
    return ((0, 0), (1 - a, 0), (a, 0), (0, 0))


def _c(a, b):
    return ((0, 1), (1 - a, b), (a, -b), (0, 1))


def _d1(a, b):
    return ((1, 0), (1 - a, b), (a, -b), (0, 0))


def _d2(a, b):
    return ((1, 0), (0, a), (0, b), (0, 0))


def _d3(a, b):
    return ((1, 0), (1, a), (-1, b), (0, 0))


def _e2(a, b, g):
    return _e1(1 - a, b, a, g)


def _e3(a, b, g):
    return _e1((1 - a) * g, b / g, a * g, (1 - b) / g)


def _e5(a):
    return _e1(1 - a, a, a, 1 - a)


BUILDERS = {
    "A1": _a1,
    "A2": lambda: ((0, 1), (0, 1), (0, -1), (0, 0)),
    "A3": lambda: ((0, 1), (0, 0), (0, 0), (0, 0)),
    "A4": _a4,
    "B1": _b1,
    "B2": _b2,
    "B3": lambda: ((0, 0), (0, 1), (0, -1), (0, 0)),
    "C": _c,
    "D1": _d1,
    "D2": _d2,
    "D3": _d3,
    "E1": _e1,
    "E2": _e2,
    "E3": _e3,
    "E4": lambda: _e1(1, 1, 0, 0),
    "E5": _e5,
    "TRIVIAL": lambda: ((0, 0),) * 4,
}

ARITY = {
    "A1": 1, "A2": 0, "A3": 0, "A4": 1, "B1": 1, "B2": 1, "B3": 0, "C": 2,
    "D1": 2, "D2": 2, "D3": 2, "E1": 4, "E2": 3, "E3": 3, "E4": 0, "E5": 1,
    "TRIVIAL": 0,
}

FAMILIES = tuple(ARITY)

CLASS_OF_FAMILY = {f: ("TRIVIAL" if f == "TRIVIAL" else f[0]) for f in FAMILIES}


def constants(family: str, params, field=EXACT) -> Structure:
    """Structure constants of a family at given parameters, in no particular domain.

    Parameters may be any ring elements; integer entries of the table are
    coerced through the field when the parameters are plain scalars.
    """
    if family not in BUILDERS:
        raise InvalidLabel(f"unknown family {family!r}")
    params = tuple(params)
    if len(params) != ARITY[family]:
        raise InvalidLabel(f"{family} takes {ARITY[family]} parameters, got {len(params)}")
    rows = BUILDERS[family](*params)
    flat = []
    for pair in rows:
        for x in pair:
            flat.append(field.coerce(x) if isinstance(x, int) else x)
    return Structure(flat, field)


# -- E-class invariants -----------------------------------------------------

@dataclass(frozen=True)
class GammaInvariants:
    C1: tuple
    C2: tuple
    C3: tuple | None
    D: object


def gamma_invariants(gamma, field=EXACT) -> GammaInvariants:
    a, b, g, d = (field.coerce(x) for x in gamma)
    D = (a + g) * (b + d) - 1
    C3 = None
    if not field.is_zero(D):
        C3 = ((b * g - (a - 1) * (d - 1)) / D, (a * d - (b - 1) * (g - 1)) / D)
    return GammaInvariants((b, d), (g, a), C3, D)


def in_line_t(pair, field=EXACT) -> bool:
    """Membership in the line {(a, b) : a + b = 1}."""
    return field.is_zero(pair[0] + pair[1] - 1)


def gamma_from_pairs(c1, c2):
    """The tuple whose first two invariant pairs are c1 and c2."""
    return (c2[1], c1[0], c2[0], c1[1])


def in_v(gamma, field=EXACT) -> bool:
    inv = gamma_invariants(gamma, field)
    if inv.C3 is None or in_line_t(inv.C1, field) or in_line_t(inv.C2, field):
        return False
    triple = (inv.C1, inv.C2, inv.C3)
    rep = v_representative(triple, field)
    return all(pair_eq(p, q, field) for p, q in zip(triple, rep))


def in_domain(family: str, params, field=EXACT) -> bool:
    params = tuple(params)
    if family == "A4":
        return field.eq(field.sign_rep(params[0]), params[0])
    if family == "C":
        return field.eq(field.sign_rep(params[1]), params[1])
    if family == "D1":
        return pair_eq(u_representative(params, field), params, field)
    if family in ("D2", "D3"):
        return not in_line_t(params, field)
    if family == "E1":
        return in_v(params, field)
    if family == "E2":
        return not in_line_t(params[1:], field)
    if family == "E3":
        g = params[2]
        if field.is_zero(g) or field.is_zero(g - 1):
            return False
        if not field.eq(field.inverse_rep(g), g):
            return False
        # inversion fixes -1, where swapping the idempotents exchanges the first two parameters
        return not field.eq(g, -1) or field.compare(params[0], params[1]) <= 0
    return True


# -- labels -----------------------------------------------------------------

def format_scalar(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, complex):
        if x.imag == 0:
            return repr(x.real)
        return f"{x.real!r}{x.imag:+}j"
    return str(x)


@dataclass(frozen=True)
class Label:
    """A canonical family name with parameters inside the family's domain."""

    family: str
    params: tuple = ()

    def __str__(self):
        if not self.params:
            return self.family
        return f"{self.family}({','.join(format_scalar(p) for p in self.params)})"

    def structure(self, field=EXACT) -> Structure:
        return constants(self.family, self.params, field)

    def same(self, other: "Label", field=EXACT) -> bool:
        return (
            self.family == other.family
            and len(self.params) == len(other.params)
            and all(field.eq(a, b) for a, b in zip(self.params, other.params))
        )


def make_label(family: str, params=(), field=EXACT) -> Label:
    if family not in ARITY:
        raise InvalidLabel(f"unknown family {family!r}")
    params = tuple(field.coerce(p) for p in params)
    if len(params) != ARITY[family]:
        raise InvalidLabel(f"{family} takes {ARITY[family]} parameters, got {len(params)}")
    if not in_domain(family, params, field):
        raise InvalidLabel(f"{family}{tuple(str(p) for p in params)} lies outside the family's domain")
    return Label(family, params)


_LABEL_RE = re.compile(r"^\s*([A-Za-z][A-Za-z0-9]*)\s*(?:\((.*)\))?\s*$")
ALIASES = {"K2": "TRIVIAL", "ZERO": "TRIVIAL"}


def parse_label(text: str, field=EXACT, strict: bool = True) -> Label:
    """Parse ``FAMILY(p1,...)`` with rational parameters such as ``D2(2,-1/3)``.

    With ``strict=False`` parameters outside the family's domain are kept as
    given; the label then names a structure but not a canonical one.
    """
    m = _LABEL_RE.match(text)
    if not m:
        raise InvalidLabel(f"cannot parse label {text!r}")
    family = m.group(1).upper()
    family = ALIASES.get(family, family)
    raw = m.group(2)
    parts = [] if raw is None or not raw.strip() else [p.strip() for p in raw.split(",")]
    try:
        params = [field.coerce(p) for p in parts]
    except (InvalidInput, ValueError) as exc:
        raise InvalidLabel(str(exc)) from exc
    if not strict:
        if family not in ARITY or len(params) != ARITY[family]:
            return make_label(family, params, field)
        return Label(family, tuple(params))
    return make_label(family, params, field)


def canonical(label: Label, field=EXACT) -> Structure:
    return label.structure(field)
