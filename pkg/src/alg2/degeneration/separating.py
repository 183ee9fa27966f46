"""Separating sets, the two invariance transforms, and non-degeneration evidence."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .. import expr, linalg, sampling, upoly
from ..algebra import KEYS, Structure, act, derivation_dimension
from ..families import Label, constants, in_domain
from ..laurent import LAURENT, Laurent
from ..scalars import EXACT
from .data import by_id, load
from .graph import DegenerationGraph, default_graph, label_from, orbit_dimension, series_closure_contains


class MissingPreChange(ValueError):
    """The source only enters the set after a basis change, and none was supplied."""


# -- the transformation rules -------------------------------------------------

def scaling_transform(mu: Structure, a1, a2) -> Structure:
    """Constants a_i a_j / a_k c_ij^k."""
    a = {1: mu.field.coerce(a1), 2: mu.field.coerce(a2)}
    return Structure(
        [a[i] * a[j] / a[k] * mu[i, j, k] for i in (1, 2) for j in (1, 2) for k in (1, 2)],
        mu.field,
    )


def shear_transform(mu: Structure, a) -> Structure:
    """Constants in the basis e1 + a e2, e2, written out coordinate by coordinate."""
    a, c = mu.field.coerce(a), mu.__getitem__
    c111, c121, c211, c221 = c((1, 1, 1)), c((1, 2, 1)), c((2, 1, 1)), c((2, 2, 1))
    c112, c122, c212, c222 = c((1, 1, 2)), c((1, 2, 2)), c((2, 1, 2)), c((2, 2, 2))
    return Structure(
        [
            c111 + a * (c121 + c211) + a * a * c221,
            c112 + a * (c122 + c212 - c111) + a * a * (c222 - c121 - c211) - a**3 * c221,
            c121 + a * c221,
            c122 + a * (c222 - c121) - a * a * c221,
            c211 + a * c221,
            c212 + a * (c222 - c211) - a * a * c221,
            c221,
            c222 - a * c221,
        ],
        mu.field,
    )


def scaling_matrix(a1, a2):
    """The g with act(g, mu) equal to scaling_transform(mu, a1, a2)."""
    return ((1 / Fraction(a1), Fraction(0)), (Fraction(0), 1 / Fraction(a2)))


def shear_matrix(a):
    """The g with act(g, mu) equal to shear_transform(mu, a)."""
    return ((Fraction(1), Fraction(0)), (-Fraction(a), Fraction(1)))


def random_transform(mu: Structure, rng: random.Random) -> Structure:
    if rng.random() < 0.5:
        return scaling_transform(mu, sampling.nonzero_rational(rng), sampling.nonzero_rational(rng))
    return shear_transform(mu, sampling.rational(rng))


# -- separating sets -----------------------------------------------------------

def _difference(equation: str) -> str:
    lhs, rhs = equation.split("=")
    return f"({lhs.strip()}) - ({rhs.strip()})"


@dataclass(frozen=True)
class SeparatingSet:
    """Common zeros of polynomial equations in the constants c11_1, ..., c22_2."""

    name: str
    equations: tuple
    env: dict = field(default_factory=dict, hash=False, compare=False)
    requires_pre_change: bool = False

    def _residuals(self, mu: Structure):
        env = dict(self.env)
        env.update(zip(KEYS, mu.c))
        return (expr.evaluate(_difference(e), env) for e in self.equations)

    def residuals(self, mu: Structure):
        return list(self._residuals(mu))

    def contains(self, mu: Structure) -> bool:
        return all(r == 0 for r in self._residuals(mu))

    def affine_parts(self):
        """(coefficients, constant) of each equation that is affine in the constants, else None."""
        out = []
        zero = {k: Fraction(0) for k in KEYS}
        for e in self.equations:
            text = _difference(e)
            f = lambda point: expr.evaluate(text, dict(self.env, **point))
            b = f(zero)
            coeffs = [f(dict(zero, **{k: Fraction(1)})) - b for k in KEYS]
            for trial in ({k: Fraction(i + 2) for i, k in enumerate(KEYS)},
                          {k: Fraction(3 - 2 * i, 7) for i, k in enumerate(KEYS)}):
                if f(trial) != b + sum(c * trial[k] for c, k in zip(coeffs, KEYS)):
                    return None
            out.append((coeffs, b))
        return out


def from_equations(name, equations, env=None, requires_pre_change=False) -> SeparatingSet:
    env = {k: Fraction(v) for k, v in (env or {}).items()}
    return SeparatingSet(name, tuple(equations), env, requires_pre_change)


def row_set(row: dict, source_params, doc: dict | None = None) -> SeparatingSet:
    """The separating set of a table row at concrete source parameters."""
    doc = doc or load()
    env = _bind(row["source"][1], source_params)
    if "template" in row:
        name, args = row["template"]
        template = doc["templates"][name]
        values = [expr.evaluate(a, env) for a in args]
        return from_equations(row["id"], template["equations"], dict(zip(template["args"], values)),
                              "pre_change" in row)
    return from_equations(row["id"], row["equations"], env, "pre_change" in row)


def g_set(gamma) -> SeparatingSet:
    """The set attached to a 4-tuple, containing the E1 structure with those parameters."""
    template = load()["templates"]["G"]
    return from_equations("G", template["equations"], dict(zip(template["args"], gamma)))


def _bind(texts, values):
    """Names bound by matching parameter expressions such as ``alpha`` or ``-alpha`` to values."""
    env = {}
    for text, value in zip(texts, values):
        t = text.replace(" ", "")
        if t.isidentifier():
            env[t] = Fraction(value)
        elif t.startswith("-") and t[1:].isidentifier():
            env.setdefault(t[1:], -Fraction(value))
    return env


# -- orbit avoidance -------------------------------------------------------------

SWAP = ((Fraction(0), Fraction(1)), (Fraction(1), Fraction(0)))


def _poly_coeffs(x):
    x = Laurent.lift(x)
    if x.is_zero():
        return []
    return [Fraction(0)] * x.low + list(x.shifted_coeffs()) if x.low >= 0 else None


def orbit_avoids(R: SeparatingSet, lam: Structure) -> bool:
    """Exact test that no basis change moves lam into R, assuming R is invariant.

    The transforms generate the lower triangular group, so every orbit point is
    reached from lam or from swap * n_s * lam with n_s lower unitriangular. The
    second family is polynomial in s, and R meets it iff the equations share a root.
    """
    if R.contains(lam):
        return False
    s = Laurent.t()
    one, zero = Laurent.const(1), Laurent()
    n_s = ((one, zero), (s, one))
    g = linalg.matmul2(((zero, one), (one, zero)), n_s)
    moved = act(g, lam.map(Laurent.lift, LAURENT))
    common = []
    for r in R.residuals(moved):
        coeffs = _poly_coeffs(r)
        if coeffs is None:
            raise ValueError("unexpected negative power in an orbit polynomial")
        if coeffs:
            common = coeffs if not common else upoly.gcd(common, coeffs)
    return len(upoly.trim(common)) == 1


# -- evidence -------------------------------------------------------------------

@dataclass
class EvidenceReport:
    source: str
    target: str
    membership: bool
    invariance: bool
    orbit_sampled: bool
    orbit_exact: bool
    aut_consistent: bool
    aut_dims: tuple
    notes: list = field(default_factory=list)

    @property
    def passed(self):
        return self.membership and self.invariance and self.orbit_sampled and self.orbit_exact and self.aut_consistent

    def as_dict(self):
        return {
            "source": self.source,
            "target": self.target,
            "status": "PASS" if self.passed else "FAIL",
            "checks": {
                "membership": self.membership,
                "invariance": self.invariance,
                "orbit_sampled": self.orbit_sampled,
                "orbit_exact": self.orbit_exact,
                "aut_dimension": self.aut_consistent,
            },
            "aut_dimensions": list(self.aut_dims),
            "notes": self.notes,
        }


def _affine_solutions(parts, rng, count):
    """Random rational points on the affine subspace cut out by ``parts``."""
    rows = [coeffs + [-b] for coeffs, b in parts]
    n = len(KEYS)
    # reduced row echelon form
    pivots, r = [], 0
    rows = [list(row) for row in rows]
    for col in range(n):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        p = rows[r][col]
        rows[r] = [x / p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    if any(all(x == 0 for x in row[:n]) and row[n] != 0 for row in rows):
        return []
    free = [c for c in range(n) if c not in pivots]
    out = []
    for _ in range(count):
        x = [Fraction(0)] * n
        for c in free:
            x[c] = sampling.rational(rng)
        for i, col in enumerate(pivots):
            x[col] = rows[i][n] - sum(rows[i][c] * x[c] for c in free)
        out.append(Structure(x, EXACT))
    return out


def invariance_members(R: SeparatingSet, base_points, rng, count=100):
    """Members of R: lower triangular images of the base points and, for affine R, random solutions."""
    parts = R.affine_parts()
    members = []
    if parts is not None:
        members.extend(_affine_solutions(parts, rng, count // 2))
    while len(members) < count:
        mu = rng.choice(base_points)
        for _ in range(rng.randint(0, 3)):
            mu = random_transform(mu, rng)
        members.append(mu)
    return members


def check_invariance(R: SeparatingSet, members, rng, transforms=20) -> bool:
    for mu in members:
        if not R.contains(mu):
            return False
        for _ in range(transforms):
            if not R.contains(random_transform(mu, rng)):
                return False
    return True


def check_nondegeneration_evidence(
    source: Label,
    target: Label,
    R: SeparatingSet,
    pre_change=None,
    *,
    rng: random.Random | None = None,
    members: int = 100,
    transforms: int = 20,
    orbit_samples: int = 500,
    series: str | None = None,
    extra_points=(),
    graph: DegenerationGraph | None = None,
    invariance: bool | None = None,
) -> EvidenceReport:
    """Four checks that the source (or its series) does not degenerate to the target.

    Evidence only: the invariance of R is sampled. Given invariance, the exact
    orbit test is a proof that the target orbit misses R.
    """
    rng = rng or random.Random(0)
    graph = graph or default_graph()
    if R.requires_pre_change and pre_change is None:
        raise MissingPreChange(f"{R.name}: the source enters the set only after a basis change")
    point = source.structure(EXACT)
    if pre_change is not None:
        point = act(pre_change, point)
    notes = []

    membership = R.contains(point)
    if not membership:
        notes.append("source structure is not in the set")

    if invariance is None:
        invariance = check_invariance(
            R, invariance_members(R, [point, *extra_points], rng, members), rng, transforms
        )
    invariance = membership and invariance

    lam = target.structure(EXACT)
    orbit_sampled = not R.contains(lam) and not any(
        R.contains(act(sampling.invertible_matrix(rng), lam)) for _ in range(orbit_samples)
    )
    orbit_exact = orbit_avoids(R, lam)

    d_src, d_tgt = derivation_dimension(source.structure(EXACT)), derivation_dimension(lam)
    if series is not None:
        consistent = not series_closure_contains(series, target)
    else:
        consistent = not graph.degenerates(source, target)
    if d_src >= d_tgt:
        notes.append("automorphism dimensions alone rule out this degeneration")
    if not consistent:
        notes.append("the degeneration graph contradicts this row")
    return EvidenceReport(
        str(source), str(target), membership, invariance, orbit_sampled, orbit_exact,
        consistent, (d_src, d_tgt), notes,
    )


# -- table rows -------------------------------------------------------------------

def _sample_source(row, rng):
    family, texts = row["source"]
    if all(t.isidentifier() for t in texts):
        return list(sampling.params(family, rng))
    names = sorted(set().union(*(expr.names(t) for t in texts)))
    while True:
        env = {n: sampling.rational(rng) for n in names}
        params = [expr.evaluate(t, env) for t in texts]
        if in_domain(family, params):
            return params


def sample_targets(row, spec, source_params, rng, count=1):
    """Target labels of a row entry, avoiding the excluded parameters."""
    env = _bind(row["source"][1], source_params)
    excluded = {tuple(expr.evaluate(x, env) for x in t) for t in spec.get("except", ())}
    family = spec["family"]
    out, tries = [], 0
    while len(out) < count and tries < 1000:
        tries += 1
        if "params" in spec:
            names = sorted(set().union(*(expr.names(t) for t in spec["params"])))
            benv = {n: sampling.rational(rng) for n in names}
            params = tuple(expr.evaluate(t, benv) for t in spec["params"])
            if not in_domain(family, params):
                continue
        else:
            params = sampling.params(family, rng)
        benv = {f"b{i + 1}": p for i, p in enumerate(params)}
        if any(expr.evaluate(x, benv) == 0 for x in spec.get("nonzero", ())):
            continue
        if tuple(params) in excluded:
            continue
        out.append(label_from(family, params))
    return out


def _pre_change(row, params):
    if "pre_change" not in row:
        return None
    env = _bind(row["source"][1], params)
    return tuple(tuple(expr.evaluate(x, env) for x in r) for r in row["pre_change"])


def evaluate_row(row_id: str, rng: random.Random | None = None, *, targets_per_family: int = 2,
                 members: int = 100, transforms: int = 20, orbit_samples: int = 500,
                 doc: dict | None = None, graph=None):
    """Evidence reports for one separating-set row at a sampled source."""
    doc = doc or load()
    rng = rng or random.Random(0)
    row = by_id(doc["separating"], row_id)
    family = row["source"][0]
    params = _sample_source(row, rng)
    # keep the row's own parameters: the set is written for them, not for a normalized label
    source = Label(family, tuple(params))
    R = row_set(row, params, doc)
    pre = _pre_change(row, params)
    series = row["id"] if row["table"] == "series" else None
    extra = []
    if series is not None:
        for _ in range(5):
            other = _sample_source(row, rng)
            mu = constants(family, other)
            g = _pre_change(row, other)
            extra.append(act(g, mu) if g is not None else mu)
    point = constants(family, params)
    if pre is not None:
        point = act(pre, point)
    invariance = R.contains(point) and check_invariance(
        R, invariance_members(R, [point, *extra], rng, members), rng, transforms
    )
    reports = []
    for spec in row["targets"]:
        for target in sample_targets(row, spec, params, rng, targets_per_family):
            reports.append(
                check_nondegeneration_evidence(
                    source, target, R, pre, rng=rng, members=members, transforms=transforms,
                    orbit_samples=orbit_samples, series=series, graph=graph, invariance=invariance,
                )
            )
    return reports


# -- explaining a non-degeneration ------------------------------------------------

def row_lists(row: dict, source: Label, target: Label) -> bool:
    """Whether a separating-set row rules out source -> target at these parameters."""
    env = _bind(row["source"][1], source.params)
    for spec in row["targets"]:
        if spec["family"] != target.family:
            continue
        for excluded in spec.get("except", ()):
            if label_from(target.family, [expr.evaluate(x, env) for x in excluded]) == target:
                return False
        return True
    return False


def _ancestors(label: Label, graph: DegenerationGraph, doc: dict, rng, tries=6):
    """Sources of primary edges that land on label, found by matching plain target parameters."""
    out = []
    for edge in doc["edges"]:
        if edge["target"] != label.family or edge["targets"] == "any":
            continue
        for texts in edge["targets"]:
            env, consistent = {}, True
            for x, v in zip(texts, label.params):
                if x in edge["params"]:
                    consistent = consistent and env.setdefault(x, v) == v
            if not consistent:
                continue
            for _ in range(tries):
                params = [env.get(n, sampling.rational(rng)) for n in edge["params"]]
                if not in_domain(edge["source"], params):
                    continue
                cand = label_from(edge["source"], params)
                if graph.degenerates(cand, label):
                    out.append(cand)
                    break
    return out


def explain_nondegeneration(source: Label, target: Label, rng: random.Random | None = None,
                            doc: dict | None = None, graph: DegenerationGraph | None = None):
    """A reason for source -/-> target, or None.

    A reason is a pair (upper, lower, why) with upper -> source and target -> lower
    (either may be trivial) where upper -/-> lower holds because the orbit of lower
    is not smaller, or because a separating-set row of the primary table lists it.
    """
    doc = doc or load()
    graph = graph or default_graph()
    rng = rng or random.Random(0)
    rows = {r["source"][0]: r for r in doc["separating"] if r["table"] == "primary"}
    lowers = [target] + [d for d in graph.reachable(target) if isinstance(d, Label) and d != target]
    uppers = [source] + _ancestors(source, graph, doc, rng)
    uppers += [u for c in uppers[1:] for u in _ancestors(c, graph, doc, rng)]
    for upper in uppers:
        row = rows.get(upper.family)
        for lower in lowers:
            if graph.degenerates(upper, lower):
                continue
            if orbit_dimension(lower) >= orbit_dimension(upper):
                return upper, lower, "orbit dimension"
            if row is not None and row_lists(row, upper, lower):
                return upper, lower, row["id"]
    return None
