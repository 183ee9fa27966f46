"""Reachability over primary degenerations, levels, series closures and the closure lattice."""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from .. import expr, sampling
from ..algebra import derivation_dimension
from ..classifier import classify
from ..families import ARITY, Label, constants, in_domain, parse_label
from ..scalars import EXACT
from .data import load


class UnknownSeries(KeyError):
    pass


class UnknownSet(KeyError):
    pass


@dataclass(frozen=True)
class AnyOf:
    """Every member of a family at once; the target of an edge with no parameter condition."""

    family: str

    def __str__(self):
        return f"{self.family}(*)"


def normalize(label: Label) -> Label:
    """The classifier's label for a label's canonical structure."""
    return classify(label.structure(EXACT))[0]


def label_from(family: str, params) -> Label:
    return classify(constants(family, params, EXACT))[0]


def _mentions(texts, names):
    return any(expr.names(x) & set(names) for x in texts)


class DegenerationGraph:
    """The primary degeneration graph instantiated at concrete parameters."""

    def __init__(self, doc: dict | None = None):
        self.doc = doc if doc is not None else load()
        self.edges_from = {}
        for edge in self.doc["edges"]:
            self.edges_from.setdefault(edge["source"], []).append(edge)
        self._succ = lru_cache(maxsize=None)(self._successors)
        self._level = lru_cache(maxsize=None)(self._level_of)

    # -- edges ------------------------------------------------------------
    def _successors(self, node):
        out = []
        if isinstance(node, AnyOf):
            for edge in self.edges_from.get(node.family, ()):
                if edge["targets"] == "any":
                    out.append(AnyOf(edge["target"]))
                elif not any(_mentions(t, edge["params"]) for t in edge["targets"]):
                    out.extend(label_from(edge["target"], [expr.evaluate(x, {}) for x in t])
                               for t in edge["targets"])
            return tuple(out)
        for edge in self.edges_from.get(node.family, ()):
            env = dict(zip(edge["params"], node.params))
            if any(expr.evaluate(x, env) == 0 for x in edge.get("nonzero", ())):
                continue
            if edge["targets"] == "any":
                out.append(AnyOf(edge["target"]))
                continue
            for t in edge["targets"]:
                out.append(label_from(edge["target"], [expr.evaluate(x, env) for x in t]))
        return tuple(out)

    def successors(self, label):
        return self._succ(label)

    # -- queries ----------------------------------------------------------
    def degenerates(self, a: Label, b: Label) -> bool:
        a, b = normalize(a), normalize(b)
        if b.family == "TRIVIAL" or a == b:
            return True
        seen = {a}
        queue = deque([a])
        while queue:
            node = queue.popleft()
            for nxt in self.successors(node):
                if nxt == b or (isinstance(nxt, AnyOf) and nxt.family == b.family):
                    return True
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        return False

    def _level_of(self, node):
        succ = self.successors(node)
        if not succ:
            return 0
        return 1 + max(self._level(s) for s in succ)

    def level(self, label: Label) -> int:
        return self._level(normalize(label))

    def reachable(self, a: Label):
        """All nodes below a, wildcard targets included."""
        a = normalize(a)
        seen = {a}
        queue = deque([a])
        while queue:
            for nxt in self.successors(queue.popleft()):
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        return seen


_DEFAULT = None


def default_graph() -> DegenerationGraph:
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = DegenerationGraph()
    return _DEFAULT


def degenerates(a: Label, b: Label, graph: DegenerationGraph | None = None) -> bool:
    return (graph or default_graph()).degenerates(a, b)


def level(label: Label, graph: DegenerationGraph | None = None) -> int:
    return (graph or default_graph()).level(label)


# -- named sets: series, their closures and the lattice ----------------------

def series_name(text: str) -> str:
    """Accept ``D2'(*)``, ``D2′(*)``, ``D2'*`` and plain names like ``A2`` or ``k2``."""
    name = text.strip().replace("′", "'").replace("(*)", "*")
    if name.upper() in ("K2", "TRIVIAL", "ZERO"):
        return "k2"
    return name


def set_contains(name: str, label: Label, doc: dict | None = None) -> bool:
    """Whether a canonical label belongs to a named series (or single algebra)."""
    doc = doc or load()
    try:
        spec = doc["series"][name]
    except KeyError:
        raise UnknownSet(name) from None
    label = normalize(label)
    if spec["family"] != label.family:
        return False
    if "params" not in spec:
        return True
    free = spec.get("free", [])
    env = {}
    for text, value in zip(spec["params"], label.params):
        if text in free:
            env[text] = value
    candidate = label_from(spec["family"], [expr.evaluate(x, env) for x in spec["params"]])
    return candidate == label


def series_closure_contains(series: str, label: Label, doc: dict | None = None) -> bool:
    doc = doc or load()
    name = series_name(series)
    if name not in doc["closures"]:
        raise UnknownSeries(series)
    members = doc["closures"][name]
    if members == "all":
        return True
    return any(set_contains(m, label, doc) for m in members)


def orbit_dimension(label: Label) -> int:
    return 4 - derivation_dimension(label.structure(EXACT))


def sample_member(name: str, rng: random.Random, doc: dict | None = None) -> Label:
    doc = doc or load()
    try:
        spec = doc["series"][name]
    except KeyError:
        raise UnknownSet(name) from None
    family = spec["family"]
    if "params" not in spec:
        return label_from(family, sampling.params(family, rng))
    while True:
        env = {n: sampling.rational(rng) for n in spec.get("free", [])}
        params = [expr.evaluate(x, env) for x in spec["params"]]
        if in_domain(family, params):
            return label_from(family, params)


def free_parameters(name: str, doc: dict | None = None) -> int:
    doc = doc or load()
    spec = doc["series"][name]
    if "params" in spec:
        return len(spec.get("free", []))
    return ARITY[spec["family"]]


def closure_dimension(name: str, doc: dict | None = None, samples: int = 3, seed: int = 0) -> int:
    """Dimension of the closure of a named set: generic orbit dimension plus free parameters."""
    doc = doc or load()
    name = series_name(name)
    rng = random.Random(seed)
    orbit = max(orbit_dimension(sample_member(name, rng, doc)) for _ in range(samples))
    return orbit + free_parameters(name, doc)


# -- lattice ----------------------------------------------------------------

def _lattice(doc):
    lat = doc["lattice"]
    below = {s: set() for s in lat["sets"]}
    for upper, lower in lat["covers"]:
        below[upper].add(lower)
    return lat["sets"], below


def down_set(name: str, doc: dict | None = None) -> set:
    doc = doc or load()
    sets, below = _lattice(doc)
    name = series_name(name)
    if name not in below:
        raise UnknownSet(name)
    out, stack = set(), [name]
    while stack:
        s = stack.pop()
        if s not in out:
            out.add(s)
            stack.extend(below[s])
    return out


def lattice_intersection(first: str, second: str, doc: dict | None = None) -> list:
    """Maximal sets reachable downward from both arguments."""
    doc = doc or load()
    sets = doc["lattice"]["sets"]
    common = down_set(first, doc) & down_set(second, doc)
    maximal = [s for s in common if not any(s != o and s in down_set(o, doc) for o in common)]
    return sorted(maximal, key=sets.index)


def parse(text: str) -> Label:
    return parse_label(text)
