"""Reduce any structure to its canonical label, with a witnessing basis change."""
from __future__ import annotations

from itertools import permutations

from . import linalg
from .algebra import Structure, act, in_basis, multiply, special_directions, linear_factor
from .families import (
    Label,
    canonical,
    gamma_invariants,
    in_line_t,
    make_label,
)
from .scalars import pair_eq, u_representative, v_representative


class WitnessError(AssertionError):
    """The computed basis change does not reproduce the canonical structure."""


class Unlisted(ArithmeticError):
    """The structure is not isomorphic to any member of the canonical list.

    Raised for class D structures with e1e1 = e1, e2e2 = 0,
    c12^1 + c21^1 != 0 and c12^2 + c21^2 = 1: e1 is the only idempotent and
    e2 spans the only 2-nil line, which no canonical D structure allows.
    """


def _diag(a, b, field):
    return ((a, field.zero), (field.zero, b))


def _cols(u, v):
    return linalg.from_columns(u, v)


def _complement(v, field):
    """The least standard basis vector independent of v."""
    if not field.is_zero(v[1]):
        return (field.one, field.zero)
    return (field.zero, field.one)


def _invariants(mu: Structure):
    """Idempotents (finite list or a linear form) and 2-nil lines of mu."""
    field = mu.field
    dirs = special_directions(mu)
    if dirs is None:
        form = linear_factor(mu)
        if all(field.is_zero(x) for x in form):
            return [], None, "all"
        a, b = form
        return None, form, [(-b, a)]
    idems, nils = [], []
    for x, lam in dirs:
        if field.is_zero(lam):
            nils.append(x)
        else:
            idems.append((x[0] / lam, x[1] / lam))
    key = lambda v: (field.key(v[0]), field.key(v[1]))
    return sorted(idems, key=key), None, sorted(nils, key=key)


def class_of(mu: Structure) -> str:
    if mu.is_zero():
        return "TRIVIAL"
    idems, form, nils = _invariants(mu)
    if form is not None or len(idems) >= 2:
        return "E"
    n_nil = 2 if nils == "all" else len(nils)
    if not idems:
        return "A" if n_nil == 1 else "B"
    return "C" if n_nil == 0 else "D"


# -- per-class recipes; each returns (family, params, basis in current coordinates)

def _class_a(nu, f):
    c = nu.__getitem__
    if f.is_zero(c((1, 2, 1))):
        if not f.is_zero(c((1, 1, 1))):
            p = c((1, 1, 1))
            return "A1", (c((1, 2, 2)) / p,), _diag(1 / p, c((1, 1, 2)) / (p * p), f)
        if not f.is_zero(c((1, 2, 2))):
            p = c((1, 2, 2))
            return "A2", (), _diag(1 / p, c((1, 1, 2)) / (p * p), f)
        return "A3", (), _diag(f.one, c((1, 1, 2)), f)
    q = c((1, 2, 1))
    a = f.sqrt(1 / (c((1, 1, 2)) * q))
    if not f.eq(f.sign_rep(c((1, 1, 1)) * a), c((1, 1, 1)) * a):
        a = -a
    basis = _cols((a, -a * c((2, 1, 2)) / q), (f.zero, 1 / q))
    return "A4", (c((1, 1, 1)) * a,), basis


def _class_b_split(nu, f):
    """nu has e1e1 = e2e2 = 0 and is not anticommutative."""
    c = nu.__getitem__
    s = c((1, 2, 1)) + c((2, 1, 1))
    if not f.is_zero(c((1, 2, 2))):
        return "B1", (c((2, 1, 1)) / s,), _diag(1 / c((1, 2, 2)), 1 / s, f)
    return "B2", (c((2, 1, 1)) / s,), _diag(f.one, 1 / s, f)


def _class_c(nu, f):
    c = nu.__getitem__
    a = f.sqrt(1 / c((1, 1, 2)))
    v = a * (c((1, 2, 2)) - c((1, 1, 1)) * c((2, 1, 1)))
    if not f.eq(f.sign_rep(v), v):
        a, v = -a, -v
    return "C", (c((2, 1, 1)), v), _cols((a, -a * c((1, 1, 1))), (f.zero, f.one))


def _class_d(nu, f):
    c = nu.__getitem__
    s = c((1, 2, 1)) + c((2, 1, 1))
    if not f.is_zero(s):
        if not f.is_zero(c((1, 2, 2)) + c((2, 1, 2))):
            raise Unlisted("one idempotent and one 2-nil line, but c12^1 + c21^1 != 0")
        pair = (c((2, 1, 1)) / s, c((1, 2, 2)))
        if pair_eq(u_representative(pair, f), pair, f):
            return "D1", pair, _diag(f.one, 1 / s, f)
        other = (1 - pair[0] + pair[1], pair[1])
        return "D1", other, _cols((f.one, f.zero), (f.one, -1 / s))
    if not f.is_zero(c((1, 2, 1))):
        return "D3", (c((1, 2, 2)), c((2, 1, 2))), _diag(f.one, 1 / c((1, 2, 1)), f)
    return "D2", (c((1, 2, 2)), c((2, 1, 2))), _diag(f.one, f.one, f)


def _gamma_of(nu):
    """Parameters of nu, assumed to have idempotent basis vectors."""
    return (nu[1, 2, 1], nu[1, 2, 2], nu[2, 1, 1], nu[2, 1, 2])


def _swap(f):
    return ((f.zero, f.one), (f.one, f.zero))


def _class_e_pair(nu, f):
    """nu has idempotent basis vectors and at most two idempotents, or a line of them."""
    al, be, ga, de = _gamma_of(nu)
    inv = gamma_invariants((al, be, ga, de), f)
    t1, t2 = in_line_t(inv.C1, f), in_line_t(inv.C2, f)
    ident = _diag(f.one, f.one, f)
    if t1 and t2:
        if pair_eq(inv.C1, inv.C2, f):
            return "E5", (be,), ident
        a = al / (al - de)
        b = (1 - al) / (de - al)
        return "E4", (), _cols((a, 1 - a), (b, 1 - b))
    if t1:
        return "E2", (be, ga, al), _swap(f)
    if t2:
        return "E2", (ga, be, de), ident
    s = al + ga
    if not f.is_zero(s - 1) and f.eq(f.inverse_rep(s), s):
        p, q = ga * (be + de), be * s
        # at -1 both orders are admissible; keep the smaller first parameter
        if not (f.eq(s, -f.one) and f.compare(q, p) < 0):
            return "E3", (p, q, s), ident
    return "E3", (be * s, ga * (be + de), be + de), _swap(f)


def _line_points(form, f):
    l1, l2 = form
    if not f.is_zero(l1) and not f.is_zero(l2):
        return (1 / l1, f.zero), (f.zero, 1 / l2)
    if f.is_zero(l2):
        return (1 / l1, f.zero), (1 / l1, f.one)
    return (f.zero, 1 / l2), (f.one, 1 / l2)


def _reduce(mu: Structure):
    """Family, parameters and overall basis (columns) for a nonzero structure."""
    f = mu.field
    idems, form, nils = _invariants(mu)

    if form is not None:
        u1, u2 = _line_points(form, f)
        P = _cols(u1, u2)
        fam, params, Q = _class_e_pair(in_basis(mu, P), f)
        return fam, params, linalg.matmul2(P, Q)

    if len(idems) == 3:
        for i, j in permutations(range(3), 2):
            P = _cols(idems[i], idems[j])
            gamma = _gamma_of(in_basis(mu, P))
            inv = gamma_invariants(gamma, f)
            triple = (inv.C1, inv.C2, inv.C3)
            rep = v_representative(triple, f)
            if all(pair_eq(p, q, f) for p, q in zip(triple, rep)):
                return "E1", gamma, P
        raise WitnessError("no ordering of the idempotents gives a representative triple")

    if len(idems) == 2:
        P = _cols(idems[0], idems[1])
        fam, params, Q = _class_e_pair(in_basis(mu, P), f)
        return fam, params, linalg.matmul2(P, Q)

    if nils == "all":
        p, q = multiply(mu, (f.one, f.zero), (f.zero, f.one))
        first = (1 / q, f.zero) if not f.is_zero(q) else (f.zero, -1 / p)
        return "B3", (), _cols(first, (p, q))

    if len(idems) == 1:
        u = idems[0]
        if not nils:
            P = _cols(_complement(u, f), u)
            fam, params, Q = _class_c(in_basis(mu, P), f)
        else:
            P = _cols(u, nils[0])
            fam, params, Q = _class_d(in_basis(mu, P), f)
        return fam, params, linalg.matmul2(P, Q)

    if len(nils) == 1:
        n = nils[0]
        P = _cols(_complement(n, f), n)
        fam, params, Q = _class_a(in_basis(mu, P), f)
        return fam, params, linalg.matmul2(P, Q)

    P = _cols(nils[0], nils[1])
    nu = in_basis(mu, P)
    if not f.is_zero(nu[1, 2, 2] + nu[2, 1, 2]):
        P = _cols(nils[1], nils[0])
        nu = in_basis(mu, P)
    fam, params, Q = _class_b_split(nu, f)
    return fam, params, linalg.matmul2(P, Q)


def classify(mu: Structure):
    """The canonical label of mu and a basis change g with act(g, mu) canonical."""
    f = mu.field
    if mu.is_zero():
        return make_label("TRIVIAL", (), f), _diag(f.one, f.one, f)
    fam, params, basis = _reduce(mu)
    label = make_label(fam, params, f)
    g = linalg.inv2(basis)
    if f.name == "exact" and act(g, mu) != canonical(label, f):
        raise WitnessError(f"witness for {label} does not reproduce the canonical constants")
    return label, g


def label_of(mu: Structure) -> Label:
    return classify(mu)[0]


def is_isomorphic(mu: Structure, lam: Structure) -> bool:
    return label_of(mu).same(label_of(lam), mu.field)
