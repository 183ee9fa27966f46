"""Command-line front end: ``alg2 <command> ...`` prints JSON and reports truth through the exit code."""
from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import expr, upoly
from .algebra import KEYS, Structure
from .classifier import Unlisted, classify, is_isomorphic
from .degeneration.certificates import verify_degeneration
from .degeneration.data import DataError, UnknownId, by_id, load
from .degeneration.graph import (
    DegenerationGraph,
    UnknownSeries,
    UnknownSet,
    normalize,
    series_closure_contains,
)
from .degeneration.separating import MissingPreChange, evaluate_row
from .families import InvalidLabel, Label, parse_label
from .identities import BUILTIN as BUILTIN_IDENTITIES
from .identities import Identity, IdentitySyntaxError, satisfies_identity
from .scalars import InvalidInput, NotRepresentable, field_for
from .subvariety import BUILTIN as BUILTIN_VARIETIES
from .subvariety import UnknownSpec, components, get_spec

TRUE, FALSE, MALFORMED, NOT_REPRESENTABLE, UNKNOWN = 0, 1, 2, 3, 4


class Malformed(ValueError):
    pass


# -- input ---------------------------------------------------------------------

def _scalar(x):
    if isinstance(x, complex):
        return [x.real, x.imag]
    return str(x)


def read_document(path: str, backend: str | None = None, tol: float | None = None) -> Structure:
    """Read an algebra document (``-`` for stdin) into a structure on the requested backend."""
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
        doc = json.loads(text)
    except OSError as exc:
        raise Malformed(str(exc)) from exc
    except json.JSONDecodeError as exc:
        raise Malformed(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise Malformed("document must be a JSON object")
    values = doc.get("constants", doc)
    if not isinstance(values, dict):
        raise Malformed("constants must be an object")
    missing = [k for k in KEYS if k not in values]
    if missing:
        raise Malformed(f"missing constants: {', '.join(missing)}")
    backend = backend or doc.get("backend", "exact")
    if tol is None:
        tol = doc.get("tolerance")
    if backend == "exact":
        for k in KEYS:
            v = values[k]
            if isinstance(v, bool) or not isinstance(v, (int, str)):
                raise Malformed(f"{k}: exact values are integers or 'p/q' strings")
    field = field_for(backend, tol)
    return Structure.from_dict(values, field)


def read_label(text: str) -> Label:
    """A label on the command line; parameters outside the canonical domain are normalized."""
    return normalize(parse_label(text, strict=False))


def label_json(label: Label) -> dict:
    return {"family": label.family, "params": [_scalar(p) for p in label.params]}


# -- commands --------------------------------------------------------------------

def cmd_classify(args, doc):
    mu = read_document(args.file, args.backend, args.tol)
    label, g = classify(mu)
    out = label_json(label)
    out["witness"] = [[_scalar(x) for x in row] for row in g]
    return out, TRUE


def cmd_isomorphic(args, doc):
    mu = read_document(args.first, args.backend, args.tol)
    lam = read_document(args.second, args.backend, args.tol)
    if mu.field.name != lam.field.name:
        raise Malformed("both documents must use the same backend")
    same = is_isomorphic(mu, lam)
    return {
        "isomorphic": same,
        "labels": [label_json(classify(mu)[0]), label_json(classify(lam)[0])],
    }, TRUE if same else FALSE


def cmd_degenerates(args, doc):
    a, b = read_label(args.source), read_label(args.target)
    result = DegenerationGraph(doc).degenerates(a, b)
    return {"source": str(a), "target": str(b), "degenerates": result}, TRUE if result else FALSE


def cmd_series_contains(args, doc):
    label = read_label(args.label)
    result = series_closure_contains(args.series, label, doc)
    return {"series": args.series, "label": str(label), "contains": result}, TRUE if result else FALSE


def cmd_level(args, doc):
    label = read_label(args.label)
    return {"label": str(label), "level": DegenerationGraph(doc).level(label)}, TRUE


def cmd_identities(args, doc):
    mu = read_document(args.file, args.backend, args.tol)
    report = {name: satisfies_identity(mu, ident) for name, ident in BUILTIN_IDENTITIES.items()}
    custom = {text: satisfies_identity(mu, Identity.parse(text)) for text in args.identity or ()}
    code = TRUE if all(custom.values()) else FALSE
    return {"identities": report, "custom": custom}, code


def cmd_components(args, doc):
    report = components(get_spec(args.variety, doc), DegenerationGraph(doc), doc)
    return dict(report.as_dict(), variety=args.variety), TRUE


def _verify_edge(ident, doc, samples, seed):
    cert = by_id(doc["certificates"], ident)
    rng = random.Random(seed)
    reports = [verify_degeneration(cert, rng=rng) for _ in range(samples)]
    failed = [r for r in reports if not r.passed]
    shown = failed[0] if failed else reports[-1]
    return dict(shown.as_dict(), kind="edge", samples=samples)


def _verify_row(ident, doc, graph, seed):
    rng = random.Random(seed)
    reports = evaluate_row(ident, rng, targets_per_family=1, doc=doc, graph=graph)
    ok = all(r.passed for r in reports)
    return {
        "id": ident,
        "kind": "nondeg",
        "status": "PASS" if ok else "FAIL",
        "reports": [r.as_dict() for r in reports],
    }


def cmd_verify(args, doc):
    edges, rows = list(args.edge or ()), list(args.nondeg or ())
    if not edges and not rows:
        edges = [c["id"] for c in doc["certificates"]]
        rows = [r["id"] for r in doc["separating"]]
    graph = DegenerationGraph(doc)
    results = [_verify_edge(e, doc, args.samples, args.seed) for e in edges]
    results += [_verify_row(r, doc, graph, args.seed) for r in rows]
    ok = all(r["status"] == "PASS" for r in results)
    return {"status": "PASS" if ok else "FAIL", "results": results}, TRUE if ok else FALSE


# -- DOT export --------------------------------------------------------------------

def _q(text) -> str:
    return json.dumps(str(text), ensure_ascii=False)


def _node_id(family, doc):
    names = doc["families"][family]["params"]
    return f"{family}({','.join(names)})" if names else family


def _dot(name, nodes, edges) -> str:
    lines = [f"digraph {_q(name)} {{", "  rankdir=TB;"]
    for n, attrs in nodes:
        lines.append(f"  {_q(n)}{_attrs(attrs)};")
    for a, b, attrs in edges:
        lines.append(f"  {_q(a)} -> {_q(b)}{_attrs(attrs)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _attrs(attrs) -> str:
    if not attrs:
        return ""
    return " [" + ", ".join(f"{k}={_q(v)}" for k, v in attrs.items()) + "]"


def dot_full(doc) -> str:
    nodes = [(_node_id(f, doc), {}) for f in doc["families"]]
    edges = []
    for e in doc["edges"]:
        attrs = {"id": e["id"]}
        if e["targets"] == "any":
            attrs["label"] = "any"
        else:
            attrs["label"] = "; ".join(f"({', '.join(t)})" for t in e["targets"])
        if "condition" in e:
            attrs["condition"] = e["condition"]
        edges.append((_node_id(e["source"], doc), _node_id(e["target"], doc), attrs))
    return _dot("primary", nodes, edges)


def dot_flexible(doc) -> str:
    spec = get_spec("flexible", doc)
    nodes = [(p.name, {}) for p in spec.members]
    edges = []
    for e in doc["flexible_graph"]:
        attrs = {"condition": e["condition"]} if "condition" in e else {}
        edges.append((e["source"], e["target"], attrs))
    return _dot("flexible", nodes, edges)


def dot_bicommutative(doc) -> str:
    spec = get_spec("bicommutative", doc)
    nodes = [(p.name, {}) for p in spec.members]
    edges = [(a, b, {}) for a, b in doc["subvarieties"]["bicommutative"]["graph"]]
    return _dot("bicommutative", nodes, edges)


def dot_lattice(doc) -> str:
    lat = doc["lattice"]
    nodes = [(s, {"dimension": d}) for s, d in zip(lat["sets"], lat["dimensions"])]
    edges = [(a, b, {}) for a, b in lat["covers"]]
    return _dot("lattice", nodes, edges)


def dot_commutative_lattice(doc) -> str:
    lat = doc["commutative_lattice"]
    nodes = [(s, {"dimension": v["dimension"]}) for s, v in lat["sets"].items()]
    edges = [(a, b, {}) for a, b in lat["covers"]]
    return _dot("commutative lattice", nodes, edges)


DOT = {
    "full": dot_full,
    "flexible": dot_flexible,
    "bicommutative": dot_bicommutative,
    "lattice": dot_lattice,
    "commutative-lattice": dot_commutative_lattice,
}


def cmd_export_dot(args, doc):
    return DOT[args.graph](doc), TRUE


# -- entry point -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="alg2", description=__doc__)
    parser.add_argument("--data", help="graph data file (default: $ALG2_DATA, then the bundled file)")
    parser.add_argument("--backend", choices=("exact", "numeric"), help="arithmetic for input documents")
    parser.add_argument("--tol", type=float, help="comparison tolerance for the numeric backend")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="canonical label and witness of an algebra document")
    p.add_argument("file")
    p.set_defaults(run=cmd_classify)

    p = sub.add_parser("isomorphic", help="whether two algebra documents are isomorphic")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(run=cmd_isomorphic)

    p = sub.add_parser("degenerates", help="whether one label degenerates to another")
    p.add_argument("source")
    p.add_argument("target")
    p.set_defaults(run=cmd_degenerates)

    p = sub.add_parser("series-contains", help="whether a series closure contains a label")
    p.add_argument("series")
    p.add_argument("label")
    p.set_defaults(run=cmd_series_contains)

    p = sub.add_parser("level", help="level of a label")
    p.add_argument("label")
    p.set_defaults(run=cmd_level)

    p = sub.add_parser("identities", help="standard identities satisfied by an algebra document")
    p.add_argument("file")
    p.add_argument("--identity", action="append", help="extra identity such as '(xy)x = x(yx)'")
    p.set_defaults(run=cmd_identities)

    p = sub.add_parser("components", help="irreducible components of a built-in subvariety")
    p.add_argument("--variety", required=True, choices=BUILTIN_VARIETIES)
    p.set_defaults(run=cmd_components)

    p = sub.add_parser("verify", help="check degeneration certificates and separating sets")
    p.add_argument("--edge", action="append", help="certificate id (repeatable)")
    p.add_argument("--nondeg", action="append", help="separating-set row id (repeatable)")
    p.add_argument("--samples", type=int, default=20, help="parameter samples per certificate")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("export-dot", help="Graphviz rendering of a graph or lattice")
    p.add_argument("--graph", choices=tuple(DOT), default="full")
    p.set_defaults(run=cmd_export_dot)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return MALFORMED if exc.code else TRUE
    try:
        if args.tol is not None and args.tol <= 0:
            raise Malformed("--tol must be positive")
        doc = load(args.data)
        out, code = args.run(args, doc)
    except NotRepresentable as exc:
        _emit({"error": str(exc), "obstruction": upoly.to_str(exc.factor)})
        return NOT_REPRESENTABLE
    except Unlisted as exc:
        _emit({"error": f"no listed family: {exc}"})
        return NOT_REPRESENTABLE
    except (UnknownId, UnknownSeries, UnknownSet, UnknownSpec) as exc:
        _emit({"error": f"unknown id {exc.args[0]!r}"})
        return UNKNOWN
    except (Malformed, InvalidInput, InvalidLabel, IdentitySyntaxError, expr.ExprError,
            DataError, MissingPreChange, ZeroDivisionError, OSError) as exc:
        _emit({"error": str(exc) or type(exc).__name__})
        return MALFORMED
    if isinstance(out, str):
        sys.stdout.write(out)
    else:
        _emit(out)
    return code


def _emit(obj):
    json.dump(obj, sys.stdout, indent=2, ensure_ascii=False, default=_fallback)
    sys.stdout.write("\n")


def _fallback(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, complex):
        return [x.real, x.imag]
    raise TypeError(f"cannot serialize {type(x).__name__}")


if __name__ == "__main__":
    sys.exit(main())
