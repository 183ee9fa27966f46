"""Subvarieties cut out by polynomial identities: members, graphs, components."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import expr, sampling
from .algebra import derivation_dimension
from .degeneration.data import load
from .degeneration.graph import AnyOf, DegenerationGraph, default_graph, label_from, series_closure_contains
from .families import FAMILIES, Label, in_domain
from .identities import Identity, satisfies_identity
from .scalars import EXACT

BUILTIN = ("commutative", "anticommutative", "flexible", "bicommutative")


class UnknownSpec(KeyError):
    pass


# -- specs and member patterns ------------------------------------------------

@dataclass(frozen=True)
class Pattern:
    """A family of canonical labels with parameters given by expressions in free names."""

    name: str
    family: str
    params: tuple = ()
    free: tuple = ()
    excluded: tuple = ()
    domain: bool = False
    series: str | None = None

    @classmethod
    def from_dict(cls, d):
        return cls(
            d["name"],
            d["family"],
            tuple(d.get("params", ())),
            tuple(d.get("free", ())),
            tuple(tuple(e) for e in d.get("except", ())),
            bool(d.get("domain", False)),
            d.get("series"),
        )

    @property
    def is_single(self):
        return not self.free

    def _params_at(self, env):
        return tuple(expr.evaluate(x, env) for x in self.params)

    def _allowed(self, env):
        values = tuple(env[n] for n in self.free)
        excluded = {tuple(expr.evaluate(x, {}) for x in e) for e in self.excluded}
        return values not in excluded

    def sample(self, rng: random.Random) -> Label:
        while True:
            env = {n: sampling.rational(rng) for n in self.free}
            if not self._allowed(env):
                continue
            params = self._params_at(env)
            if in_domain(self.family, params):
                return label_from(self.family, params)
            if not self.domain:
                # outside the canonical domain the pattern still names an algebra
                return label_from(self.family, params)

    def label(self) -> Label:
        if not self.is_single:
            raise ValueError(f"{self.name} is a series")
        return label_from(self.family, self._params_at({}))

    def matches(self, label: Label) -> bool:
        if label.family != self.family:
            return False
        env = {}
        for text, value in zip(self.params, label.params):
            if text in self.free:
                if text in env and env[text] != value:
                    return False
                env[text] = value
        if set(env) != set(self.free) or not self._allowed(env):
            return False
        return self._params_at(env) == tuple(label.params)


@dataclass
class SubvarietySpec:
    name: str
    identities: tuple
    members: tuple

    def pattern(self, name: str) -> Pattern:
        for p in self.members:
            if p.name == name:
                return p
        raise KeyError(name)

    def listed(self, label: Label) -> bool:
        """Whether the label appears in the member list."""
        return any(p.matches(label) for p in self.members)


def get_spec(name: str, doc: dict | None = None) -> SubvarietySpec:
    doc = doc or load()
    subs = doc["subvarieties"]
    if name not in subs:
        raise UnknownSpec(name)
    entry = subs[name]
    members = []
    for part in entry.get("union", ()):
        members.extend(get_spec(part, doc).members)
    members.extend(Pattern.from_dict(m) for m in entry.get("members", ()))
    seen = set()
    members = [p for p in members if not (p.name in seen or seen.add(p.name))]
    return SubvarietySpec(name, tuple(Identity.parse(i) for i in entry["identities"]), tuple(members))


def membership(spec: SubvarietySpec | str, label: Label) -> bool:
    if isinstance(spec, str):
        spec = get_spec(spec)
    mu = label.structure(EXACT)
    return all(satisfies_identity(mu, i) for i in spec.identities)


def sweep(spec: SubvarietySpec | str, grid=(-1, 0, Fraction(1, 2), 1, 2)):
    """Distinct canonical labels satisfying the identities, over a parameter grid for every family."""
    from itertools import product

    from .families import ARITY

    if isinstance(spec, str):
        spec = get_spec(spec)
    found = {}
    for family in FAMILIES:
        for params in product(grid, repeat=ARITY[family]):
            params = tuple(Fraction(p) for p in params)
            if family == "E3" and params[2] in (0, 1):
                continue
            try:
                label = label_from(family, params)
            except ZeroDivisionError:
                continue
            if label.family != "TRIVIAL" and membership(spec, label):
                found[str(label)] = label
    return found


# -- restricted graphs ------------------------------------------------------------

@dataclass
class RestrictedGraph:
    nodes: list
    edges: list
    names: dict = field(default_factory=dict)

    def has_edge(self, a, b) -> bool:
        return (a, b) in self.edges


def _covering(nodes, below):
    edges = []
    for a in nodes:
        for b in below[a]:
            if not any(c not in (a, b) and c in below[a] and b in below[c] for c in nodes):
                edges.append((a, b))
    return edges


def restricted_graph(spec: SubvarietySpec | str, labels=None, graph: DegenerationGraph | None = None,
                     rng: random.Random | None = None, samples: int = 3) -> RestrictedGraph:
    """Covering relations of the degeneration order among member labels.

    Without explicit labels, single members are used as they are and each series
    member contributes a few sampled labels together with every member label
    they degenerate to.
    """
    if isinstance(spec, str):
        spec = get_spec(spec)
    graph = graph or default_graph()
    rng = rng or random.Random(0)
    if labels is None:
        labels = []
        for p in spec.members:
            if p.is_single:
                labels.append(p.label())
            else:
                labels.extend(p.sample(rng) for _ in range(samples))
        extra = []
        for lab in labels:
            for node in graph.reachable(lab):
                if isinstance(node, Label) and membership(spec, node):
                    extra.append(node)
        labels = labels + extra
    nodes = list(dict.fromkeys(labels))
    below = {}
    for a in nodes:
        reach = graph.reachable(a)
        wild = {n.family for n in reach if isinstance(n, AnyOf)}
        below[a] = {b for b in nodes if b != a and (b in reach or b.family in wild or b.family == "TRIVIAL")}
    names = {}
    for n in nodes:
        for p in spec.members:
            if p.matches(n):
                names[n] = p.name
                break
    return RestrictedGraph(nodes, _covering(nodes, below), names)


def pattern_edges(rg: RestrictedGraph) -> set:
    """Edges of a restricted graph with nodes replaced by member pattern names."""
    return {(rg.names.get(a, str(a)), rg.names.get(b, str(b))) for a, b in rg.edges}


# -- components -------------------------------------------------------------------

@dataclass
class Component:
    generator: str
    dimension: int
    members: list
    rigid: bool


@dataclass
class ComponentReport:
    components: list
    rigid: list

    def as_dict(self):
        return {
            "components": [
                {"generator": c.generator, "dimension": c.dimension, "members": c.members, "rigid": c.rigid}
                for c in self.components
            ],
            "rigid": self.rigid,
        }


def _orbit_dimension(label):
    return 4 - derivation_dimension(label.structure(EXACT))


def _pattern_dimension(p: Pattern, rng) -> int:
    if p.is_single:
        return _orbit_dimension(p.label())
    return max(_orbit_dimension(p.sample(rng)) for _ in range(3)) + len(p.free)


def _lattice_below(doc):
    lat = doc["commutative_lattice"]
    below = {s: set() for s in lat["sets"]}
    for upper, lower in lat["covers"]:
        below[upper].add(lower)

    def down(s):
        out, stack = set(), [s]
        while stack:
            x = stack.pop()
            if x not in out:
                out.add(x)
                stack.extend(below[x])
        return out

    return {s: down(s) for s in below}


def _lattice_member(entry):
    return entry.get("member")


def components(spec: SubvarietySpec | str, graph: DegenerationGraph | None = None,
               doc: dict | None = None, rng: random.Random | None = None) -> ComponentReport:
    """Maximal closures among the member patterns, with rigid single algebras."""
    doc = doc or load()
    if isinstance(spec, str):
        spec = get_spec(spec, doc)
    graph = graph or default_graph()
    rng = rng or random.Random(0)

    # closure sets keyed by pattern name; isomorphic single members collapse to one set
    groups = {}
    for p in spec.members:
        key = str(p.label()) if p.is_single else p.name
        groups.setdefault(key, []).append(p)

    lat_sets = doc["commutative_lattice"]["sets"]
    by_member = {_lattice_member(v): k for k, v in lat_sets.items() if _lattice_member(v)}
    lattice_down = _lattice_below(doc)

    def contains(upper: Pattern, lower: Pattern) -> bool:
        if upper.is_single:
            top = upper.label()
            if lower.is_single:
                return graph.degenerates(top, lower.label())
            return all(graph.degenerates(top, lower.sample(rng)) for _ in range(3))
        if upper.name in by_member and lower.name in by_member:
            return by_member[lower.name] in lattice_down[by_member[upper.name]]
        if upper.series is not None:
            lowers = [lower.label()] if lower.is_single else [lower.sample(rng) for _ in range(3)]
            return all(series_closure_contains(upper.series, x, doc) for x in lowers)
        return False

    reps = {k: v[0] for k, v in groups.items()}
    maximal = [
        k for k, p in reps.items()
        if not any(o != k and contains(q, p) and not contains(p, q) for o, q in reps.items())
    ]
    comps = []
    for k in maximal:
        top = reps[k]
        members = []
        for o, q in reps.items():
            if o == k or contains(top, q):
                members.extend(x.name for x in groups[o])
        comps.append(Component(" = ".join(x.name for x in groups[k]), _pattern_dimension(top, rng),
                               members, top.is_single))
    rigid = [name for c in comps if c.rigid for name in c.generator.split(" = ")]
    return ComponentReport(comps, rigid)


# -- the commutative lattice ---------------------------------------------------------

@dataclass
class LatticeNode:
    name: str
    dimension: int
    stated: int


def commutative_lattice(doc: dict | None = None, rng: random.Random | None = None):
    """Named closure sets of commutative algebras with computed dimensions and the cover edges."""
    doc = doc or load()
    rng = rng or random.Random(0)
    spec = get_spec("commutative", doc)
    nodes = []
    for name, entry in doc["commutative_lattice"]["sets"].items():
        if "member" in entry:
            dim = _pattern_dimension(spec.pattern(entry["member"]), rng)
        else:
            family, params = entry["label"]
            dim = _orbit_dimension(label_from(family, [expr.evaluate(x, {}) for x in params]))
        nodes.append(LatticeNode(name, dim, entry["dimension"]))
    return nodes, [tuple(e) for e in doc["commutative_lattice"]["covers"]]
