import itertools
import random
from fractions import Fraction as F

import pytest
from conftest import labels_of_every_family

from alg2 import sampling
from alg2.algebra import Structure, act, idempotents, two_nil_lines
from alg2.classifier import Unlisted, class_of, classify, is_isomorphic
from alg2.families import (
    ARITY,
    FAMILIES,
    InvalidLabel,
    Label,
    constants,
    gamma_from_pairs,
    gamma_invariants,
    in_domain,
    in_line_t,
    make_label,
    parse_label,
)
from alg2.linalg import IDENTITY, det2
from alg2.scalars import NUMERIC, NotRepresentable


def test_class_examples():
    assert class_of(constants("A4", (F(2),))) == "A"
    assert class_of(constants("D2", (0, 0))) == "D"
    assert class_of(Structure.zero()) == "TRIVIAL"


def test_classify_examples():
    label, g = classify(constants("A3", ()))
    assert label == Label("A3") and g == IDENTITY
    assert classify(constants("E1", (1, 1, 0, 0)))[0] == Label("E4")
    g = ((F(1), F(1)), (F(0), F(1)))
    mu = act(g, constants("D2", (F(2), F(3))))
    label, h = classify(mu)
    assert label == Label("D2", (F(2), F(3)))
    assert act(h, mu) == constants("D2", (F(2), F(3)))
    assert classify(Structure.zero())[0].family == "TRIVIAL"


def test_isomorphism_examples(rng):
    assert not is_isomorphic(constants("A2", ()), constants("A3", ()))
    mu = constants("C", (F(1, 3), F(2)))
    assert is_isomorphic(mu, act(sampling.invertible_matrix(rng), mu))
    a, b, g, d = F(2), F(-1, 3), F(5, 2), F(7)
    assert is_isomorphic(constants("E1", (d, g, b, a)), constants("E1", (a, b, g, d)))


def test_gamma_invariant_examples():
    inv = gamma_invariants((0, 0, 0, 0))
    assert (inv.C1, inv.C2, inv.D, inv.C3) == ((0, 0), (0, 0), -1, (1, 1))
    inv = gamma_invariants((1, 1, 0, 0))
    assert (inv.C1, inv.C2, inv.D, inv.C3) == ((1, 0), (0, 1), 0, None)
    inv = gamma_invariants((-1, -1, -1, -1))
    assert (inv.C1, inv.C2, inv.D, inv.C3) == ((-1, -1), (-1, -1), 3, (-1, -1))


def test_labels_outside_the_domain_are_rejected():
    with pytest.raises(InvalidLabel):
        make_label("D2", (F(1, 3), F(2, 3)))
    with pytest.raises(InvalidLabel):
        make_label("A4", (F(-1),))
    with pytest.raises(InvalidLabel):
        parse_label("E3(1,2,1/2)")
    with pytest.raises(InvalidLabel):
        parse_label("Q(1)")
    assert parse_label("k2").family == "TRIVIAL"
    assert parse_label("D2(2,-1/3)") == Label("D2", (F(2), F(-1, 3)))


def test_irrational_normal_form_is_reported():
    # the idempotents of this structure are cut out by 3t^3 - 4t - 3
    mu = Structure([0, 3, 0, 0, 2, 0, 3, -2])
    with pytest.raises(NotRepresentable) as err:
        classify(mu)
    assert err.value.factor == (-3, -4, 0, 3)
    label, _ = classify(Structure([complex(x) for x in mu.c], NUMERIC))
    assert label.family != "TRIVIAL"


def test_missing_one_idempotent_class_is_reported():
    # e1e1 = e1, e1e2 = e2, e2e1 = e1: one idempotent, one 2-nil line, no listed family
    with pytest.raises(Unlisted):
        classify(Structure([1, 0, 0, 1, 1, 0, 0, 0]))


@pytest.mark.parametrize("family", FAMILIES)
def test_canonical_structures_are_fixed_points(family):
    rng = random.Random(family)
    for _ in range(50):
        label = sampling.label(family, rng)
        mu = label.structure()
        found, g = classify(mu)
        assert found == label
        assert det2(g) != 0 and act(g, mu) == mu


@pytest.mark.parametrize("family", FAMILIES)
def test_label_is_an_orbit_invariant(family):
    rng = random.Random(family + "orbit")
    for _ in range(30):
        label = sampling.label(family, rng)
        mu = act(sampling.invertible_matrix(rng), label.structure())
        found, g = classify(mu)
        assert found == label
        assert act(g, mu) == label.structure()


def test_distinct_labels_are_not_isomorphic(rng):
    labels = list(dict.fromkeys(labels_of_every_family(rng, 4)))
    for a, b in itertools.combinations(labels, 2):
        assert not is_isomorphic(a.structure(), b.structure())


def _class_from_counts(mu):
    if mu.is_zero():
        return "TRIVIAL"
    idem = idempotents(mu)
    nil = two_nil_lines(mu).kind
    n = float("inf") if idem.kind == "line" else len(idem)
    if n == 0:
        return "A" if nil == "One" else "B"
    if n == 1:
        return "C" if nil == "Empty" else "D"
    return "E"


@pytest.mark.parametrize("family", FAMILIES)
def test_class_matches_idempotent_and_nil_counts(family):
    rng = random.Random(family + "class")
    for _ in range(10):
        mu = sampling.label(family, rng).structure()
        expected = "E" if family == "E4" else family[0] if family != "TRIVIAL" else "TRIVIAL"
        assert class_of(mu) == _class_from_counts(mu) == expected


def test_permuting_the_pair_invariants_keeps_the_label(rng):
    checked = 0
    while checked < 30:
        gamma = tuple(sampling.rational(rng) for _ in range(4))
        inv = gamma_invariants(gamma)
        if inv.C3 is None or in_line_t(inv.C1) or in_line_t(inv.C2) or in_line_t(inv.C3):
            continue
        labels = set()
        for first, second, _ in itertools.permutations((inv.C1, inv.C2, inv.C3)):
            labels.add(classify(constants("E1", gamma_from_pairs(first, second)))[0])
        assert len(labels) == 1
        checked += 1


def test_sampled_parameters_are_in_domain(rng):
    for family in FAMILIES:
        for _ in range(20):
            ps = sampling.params(family, rng)
            assert len(ps) == ARITY[family] and in_domain(family, ps)
