"""End-to-end acceptance checks, one test per criterion.

Each test records a PASS/FAIL line that is printed in the terminal summary.
Run only these with ``pytest tests/test_acceptance.py -v``.
"""
import itertools
import random
import time

import pytest
from conftest import CRITERIA, DERIVATION_DIMENSION, LINE_GENERATED
from test_data import LATTICE_DIMENSIONS, LEVELS

from alg2 import sampling
from alg2.algebra import (
    KEYS,
    Structure,
    act,
    derivation_dimension,
    generates_line,
    multiply,
    special_directions,
)
from alg2.classifier import classify, is_isomorphic
from alg2.degeneration import (
    closure_dimension,
    evaluate_row,
    g_set,
    lattice_intersection,
    level,
    load,
    shear_transform,
    verify_degeneration,
)
from alg2.degeneration.separating import check_invariance, invariance_members, shear_matrix
from alg2.families import FAMILIES, constants
from alg2.identities import ANTICOMMUTATIVE, COMMUTATIVE, FLEXIBLE, satisfies_identity
from alg2.scalars import EXACT, NUMERIC
from alg2.subvariety import commutative_lattice, components, get_spec, sweep


def record(n, ok, detail=""):
    CRITERIA[n] = ("PASS" if ok else "FAIL") + (f"  {detail}" if detail else "")
    print(f"criterion {n}: {CRITERIA[n]}")
    return ok


def test_criterion_01_classification_soundness():
    rng = random.Random(1)
    start, failures = time.perf_counter(), []
    for family in FAMILIES:
        for _ in range(50):
            label = sampling.label(family, rng)
            canonical = label.structure(EXACT)
            for _ in range(10):
                mu = act(sampling.invertible_matrix(rng), canonical)
                got, witness = classify(mu)
                if got != label or act(witness, mu) != canonical:
                    failures.append((label, mu))
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 30
    assert record(1, ok, f"{len(FAMILIES) * 500} inputs, {len(failures)} wrong, {elapsed:.1f}s"), failures[:3]


def test_criterion_02_uniqueness():
    rng = random.Random(2)
    labels = {}
    singles = [f for f in FAMILIES if not sampling.params(f, rng)]
    for f in singles:
        labels[sampling.label(f, rng)] = None
    families = itertools.cycle([f for f in FAMILIES if f not in singles])
    while len(labels) < 100:
        labels[sampling.label(next(families), rng)] = None
    structures = [lab.structure(EXACT) for lab in labels]
    start = time.perf_counter()
    clashes = [(a, b) for a, b in itertools.combinations(structures, 2) if is_isomorphic(a, b)]
    elapsed = time.perf_counter() - start
    ok = not clashes and elapsed < 10
    assert record(2, ok, f"{len(structures)} labels, {len(clashes)} isomorphic pairs, {elapsed:.1f}s")


def test_criterion_03_derivation_dimensions():
    rng = random.Random(3)
    wrong = [
        (f, dim)
        for f in FAMILIES
        for dim in (derivation_dimension(sampling.label(f, rng).structure(EXACT)) for _ in range(20))
        if dim != DERIVATION_DIMENSION[f]
    ]
    assert record(3, not wrong, f"{len(wrong)} mismatches"), wrong[:3]


def test_criterion_04_certificates():
    start, failed = time.perf_counter(), []
    certificates = load()["certificates"]
    for cert in certificates:
        rng = random.Random(cert["id"])
        for _ in range(20):
            report = verify_degeneration(cert, rng=rng)
            if not report.passed:
                failed.append((cert["id"], report.reason))
    elapsed = time.perf_counter() - start
    ok = not failed and elapsed < 60
    assert record(4, ok, f"{len(certificates)} certificates x 20, {len(failed)} failed, {elapsed:.1f}s"), failed[:3]


def test_criterion_05_nondegeneration_evidence():
    failed, count = [], 0
    for row in load()["separating"]:
        for report in evaluate_row(row["id"], random.Random(row["id"]), targets_per_family=1,
                                   members=100, transforms=20, orbit_samples=500):
            count += 1
            if not report.passed:
                failed.append((row["id"], report.as_dict()))
    rng = random.Random(5)
    g_failed = 0
    for _ in range(50):
        gamma = tuple(sampling.rational(rng) for _ in range(4))
        R, mu = g_set(gamma), constants("E1", gamma)
        if not (R.contains(mu) and check_invariance(R, invariance_members(R, [mu], rng, 100), rng, 20)):
            g_failed += 1
    ok = not failed and not g_failed
    assert record(5, ok, f"{count} row targets, {len(failed)} failed; {g_failed}/50 G sets failed"), failed[:2]


def test_criterion_06_levels():
    rng = random.Random(6)
    expected = {f: lvl for lvl, fams in LEVELS.items() for f in fams}
    # E3 is missing from the printed level table; its longest chain has length 3
    expected.setdefault("E3", 3)
    wrong = [
        (f, level(lab))
        for f in FAMILIES
        for lab in (sampling.label(f, rng) for _ in range(10))
        if level(lab) != expected[f]
    ]
    assert record(6, not wrong, f"{len(wrong)} mismatches"), wrong[:3]


def test_criterion_07_lattice():
    wrong = {n: closure_dimension(n) for n in LATTICE_DIMENSIONS if closure_dimension(n) != LATTICE_DIMENSIONS[n]}
    meets = [lattice_intersection(*ex["sets"]) == ex["meet"] for ex in load()["lattice"]["examples"]]
    ok = not wrong and all(meets)
    assert record(7, ok, f"{len(LATTICE_DIMENSIONS)} dimensions, {len(wrong)} wrong; meets {meets}"), wrong


@pytest.mark.xfail(strict=True, reason="every E5 algebra is flexible, so the rigid flexible set is empty")
def test_criterion_08_flexible_variety():
    rng = random.Random(8)
    exceptions = set()
    for f in FAMILIES:
        for _ in range(20):
            lab = sampling.label(f, rng)
            mu = lab.structure(EXACT)
            flexible = satisfies_identity(mu, FLEXIBLE)
            if flexible != (satisfies_identity(mu, COMMUTATIVE) or satisfies_identity(mu, ANTICOMMUTATIVE)):
                exceptions.add(f)
    report = components("flexible")
    nodes, _ = commutative_lattice()
    dims = sorted((n.dimension for n in nodes), reverse=True)
    ok = (
        not exceptions
        and len(report.components) == 2
        and report.rigid == ["B3"]
        and dims == [6, 5, 5, 4, 4, 4, 3, 3, 3, 2, 2, 0]
    )
    detail = (f"flexible but neither commutative nor anticommutative: {sorted(exceptions)}; "
              f"{len(report.components)} components, rigid {report.rigid}; lattice {dims}")
    assert record(8, ok, detail)


@pytest.mark.xfail(strict=True, reason="D1(1,0) is isomorphic to D1(0,0)")
def test_criterion_09_bicommutative_variety():
    spec = get_spec("bicommutative")
    listed = {str(p.label()) for p in spec.members if p.family != "TRIVIAL"}
    found = set(sweep(spec))
    report = components(spec)
    displayed = [set(c["members"]) for c in load()["subvarieties"]["bicommutative"]["components"]]
    got = [set(c.members) for c in report.components]
    ok = (
        len(found) == 8
        and found == listed
        and len(report.components) == 3
        and all(any(d == g for g in got) for d in displayed)
        and all(c.dimension == 4 for c in report.components)
        and report.rigid == ["D1(0,0)", "D1(1,0)", "E1(0,0,0,0)"]
    )
    detail = (f"sweep found {len(found)} distinct algebras; {len(report.components)} components "
              f"of dimensions {[c.dimension for c in report.components]}; rigid {report.rigid}")
    assert record(9, ok, detail)


def _cubic_residual(mu):
    dirs = special_directions(mu)
    if dirs is None:
        return 0.0
    x, _ = dirs[0]
    sq = multiply(mu, x, x)
    return abs(x[0] * sq[1] - x[1] * sq[0]) / max(abs(x[0]), abs(x[1])) ** 3


def test_criterion_10_properties():
    rng = random.Random(10)
    worst = max(
        _cubic_residual(Structure([complex(rng.uniform(-3, 3), rng.uniform(-3, 3)) for _ in KEYS], NUMERIC))
        for _ in range(1000)
    )
    shear_ok = all(
        shear_transform(mu, a) == act(shear_matrix(a), mu)
        for mu, a in (
            (Structure([sampling.rational(rng) for _ in KEYS], EXACT), sampling.rational(rng))
            for _ in range(100)
        )
    )
    dichotomy = []
    for f in FAMILIES:
        for _ in range(5):
            mu = sampling.label(f, rng).structure(EXACT)
            lines = all(generates_line(mu, (sampling.rational(rng), sampling.rational(rng))) for _ in range(50))
            dichotomy.append(lines == (f in LINE_GENERATED))
    ok = worst <= 1e-6 and shear_ok and all(dichotomy)
    assert record(10, ok, f"max residual {worst:.1e}; shear {shear_ok}; one-generated {all(dichotomy)}")
