"""Random rationals, basis changes and in-domain parameters for testing."""
from __future__ import annotations

import random
from fractions import Fraction

from . import linalg
from .families import ARITY, gamma_from_pairs, gamma_invariants, in_domain, in_line_t, make_label
from .scalars import EXACT, u_representative, v_representative


def rational(rng: random.Random, size: int = 9, den: int = 5) -> Fraction:
    return Fraction(rng.randint(-size, size), rng.randint(1, den))


def nonzero_rational(rng, size=9, den=5) -> Fraction:
    while True:
        x = rational(rng, size, den)
        if x:
            return x


def invertible_matrix(rng, size=5, den=3):
    while True:
        m = tuple(tuple(rational(rng, size, den) for _ in range(2)) for _ in range(2))
        if linalg.det2(m) != 0:
            return m


def _raw_params(family, rng):
    n = ARITY[family]
    ps = [rational(rng) for _ in range(n)]
    if family == "A4":
        ps[0] = abs(ps[0])
    elif family == "C":
        ps[1] = abs(ps[1])
    elif family == "D1":
        ps = list(u_representative(tuple(ps)))
    elif family == "E1":
        inv = gamma_invariants(ps)
        if inv.C3 is not None and not in_line_t(inv.C1) and not in_line_t(inv.C2):
            rep = v_representative((inv.C1, inv.C2, inv.C3))
            ps = list(gamma_from_pairs(rep[0], rep[1]))
    elif family == "E3":
        if ps[2] not in (0, 1):
            ps[2] = EXACT.inverse_rep(ps[2])
            if ps[2] == -1 and ps[1] < ps[0]:
                ps[0], ps[1] = ps[1], ps[0]
    return tuple(ps)


def params(family: str, rng: random.Random):
    """Exact parameters inside the family's canonical domain."""
    while True:
        ps = _raw_params(family, rng)
        if in_domain(family, ps):
            return ps


def label(family: str, rng: random.Random):
    return make_label(family, params(family, rng))
