import random
from fractions import Fraction as F

import pytest

from alg2 import expr
from alg2.algebra import derivation_dimension
from alg2.degeneration import DegenerateBasis, load, verify_degeneration
from alg2.degeneration.certificates import sample_env, target_structure
from alg2.degeneration.data import by_id
from alg2.families import constants

CERTIFICATES = [c["id"] for c in load()["certificates"]]


def cert(ident):
    return by_id(load()["certificates"], ident)


def test_a2_to_a3():
    report = verify_degeneration(cert("A2-A3"))
    assert report.passed, report.reason
    assert report.as_dict()["status"] == "PASS"


def test_a2_to_a3_with_a_wrong_basis_fails():
    wrong = dict(cert("A2-A3"), basis=[["t", "0"], ["0", "t"]])
    report = verify_degeneration(wrong)
    assert not report.passed
    assert report.as_dict()["status"] == "FAIL"


def test_e4_to_e5_at_one_third():
    report = verify_degeneration(cert("E4-E5"), {"alpha": F(1, 3)})
    assert report.passed, report.reason


def test_laurent_basis_path(rng):
    c = cert("A1-E5")
    assert any("t^-1" in x for vec in c["basis"] for x in vec)
    for _ in range(20):
        report = verify_degeneration(c, rng=random.Random(rng.random()))
        assert report.passed, report.reason


def test_pole_is_reported():
    bad = dict(cert("A2-A3"), basis=[["t^-1", "0"], ["0", "1"]])
    report = verify_degeneration(bad)
    assert not report.passed and "pole" in report.reason


def test_singular_basis_raises():
    with pytest.raises(DegenerateBasis):
        verify_degeneration(dict(cert("A2-A3"), basis=[["t", "0"], ["2*t", "0"]]))


@pytest.mark.parametrize("ident", CERTIFICATES)
def test_certificate_passes_at_twenty_samples(ident):
    rng = random.Random(ident)
    c = cert(ident)
    for _ in range(20):
        report = verify_degeneration(c, rng=rng)
        assert report.passed, f"{report.reason} at {report.env}"


PLAIN = [c["id"] for c in load()["certificates"] if c["table"] in ("primary", "lemma")]


@pytest.mark.parametrize("ident", PLAIN)
def test_automorphism_dimension_grows_along_a_degeneration(ident):
    rng = random.Random(ident)
    c = cert(ident)
    family, texts = c["source"]
    for _ in range(5):
        env = sample_env(c, rng)
        mu = constants(family, [expr.evaluate(x, env) for x in texts])
        assert derivation_dimension(mu) < derivation_dimension(target_structure(c, env))
