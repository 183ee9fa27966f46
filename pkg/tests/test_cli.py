import io
import json
from fractions import Fraction as F

import jsonschema
import pytest

from alg2 import cli
from alg2.algebra import Structure, act
from alg2.degeneration.data import output_schema
from alg2.families import constants


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    doc = json.loads(out)
    jsonschema.validate(doc, output_schema())
    return code, doc


def write_doc(tmp_path, mu, name="mu.json", **extra):
    path = tmp_path / name
    path.write_text(json.dumps({"constants": {k: str(v) for k, v in mu.as_dict().items()}, **extra}))
    return str(path)


def test_classify_a3(tmp_path, capsys):
    code, out = run_json(capsys, "classify", write_doc(tmp_path, constants("A3", ())))
    assert code == 0
    assert out["family"] == "A3" and out["params"] == []


def test_classify_zero(tmp_path, capsys):
    code, out = run_json(capsys, "classify", write_doc(tmp_path, constants("TRIVIAL", ())))
    assert code == 0 and out["family"] == "TRIVIAL"


def test_classify_moved_d2(tmp_path, capsys):
    mu = act(((F(1), F(1)), (F(0), F(1))), constants("D2", (F(2), F(3))))
    code, out = run_json(capsys, "classify", write_doc(tmp_path, mu))
    assert code == 0
    assert out["family"] == "D2" and out["params"] == ["2", "3"]
    witness = tuple(tuple(F(x) for x in row) for row in out["witness"])
    assert act(witness, mu) == constants("D2", (F(2), F(3)))


def test_classify_round_trip(tmp_path, capsys):
    mu = act(((F(2), F(1)), (F(-1), F(3))), constants("E3", (F(1, 3), F(2), F(5))))
    _, out = run_json(capsys, "classify", write_doc(tmp_path, mu))
    canonical = constants(out["family"], [F(p) for p in out["params"]])
    _, again = run_json(capsys, "classify", write_doc(tmp_path, canonical, "again.json"))
    assert (again["family"], again["params"]) == (out["family"], out["params"])


def test_classify_reads_stdin(capsys, monkeypatch):
    doc = {"c11_1": 0, "c11_2": 1, "c12_1": 0, "c12_2": 0, "c21_1": 0, "c21_2": 0, "c22_1": 0, "c22_2": 0}
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(doc)))
    code, out = run_json(capsys, "classify", "-")
    assert code == 0 and out["family"] == "A3"


def test_numeric_document(tmp_path, capsys):
    mu = constants("B3", ())
    path = tmp_path / "n.json"
    path.write_text(json.dumps({"backend": "numeric", "tolerance": 1e-9,
                                "constants": {k: [float(v), 0.0] for k, v in mu.as_dict().items()}}))
    code, out = run_json(capsys, "classify", str(path))
    assert code == 0 and out["family"] == "B3"


def test_irrational_root_exits_3(tmp_path, capsys):
    mu = Structure([0, 3, 0, 0, 2, 0, 3, -2])
    code, out = run_json(capsys, "classify", write_doc(tmp_path, mu))
    assert code == 3
    assert "obstruction" in out


def test_unlisted_algebra_exits_3(tmp_path, capsys):
    mu = Structure([1, 0, 0, 1, 1, 0, 0, 0])
    code, out = run_json(capsys, "classify", write_doc(tmp_path, mu))
    assert code == 3 and "error" in out


def test_malformed_documents(tmp_path, capsys):
    missing = tmp_path / "missing.json"
    missing.write_text(json.dumps({"c11_1": 1}))
    assert run(capsys, "classify", str(missing))[0] == 2
    zero_den = tmp_path / "zero.json"
    zero_den.write_text(json.dumps({"constants": {k: "1/0" for k in constants("A3", ()).as_dict()}}))
    assert run(capsys, "classify", str(zero_den))[0] == 2
    garbage = tmp_path / "garbage.json"
    garbage.write_text("{")
    assert run(capsys, "classify", str(garbage))[0] == 2
    assert run(capsys, "classify", str(tmp_path / "nope.json"))[0] == 2


def test_isomorphic(tmp_path, capsys):
    mu = constants("D2", (F(2), F(3)))
    moved = act(((F(0), F(1)), (F(1), F(2))), mu)
    a, b = write_doc(tmp_path, mu, "a.json"), write_doc(tmp_path, moved, "b.json")
    assert run_json(capsys, "isomorphic", a, b)[0] == 0
    c = write_doc(tmp_path, constants("A3", ()), "c.json")
    assert run_json(capsys, "isomorphic", a, c)[0] == 1


def test_degenerates(capsys):
    code, out = run_json(capsys, "degenerates", "A2", "B3")
    assert code == 0 and out["degenerates"] is True
    assert run_json(capsys, "degenerates", "E4", "A3")[0] == 1
    assert run(capsys, "degenerates", "A2(", "B3")[0] == 2


def test_level(capsys):
    code, out = run_json(capsys, "level", "E4")
    assert code == 0 and out["level"] == 2
    assert run(capsys, "level", "Q")[0] == 2


def test_series_contains(capsys):
    assert run_json(capsys, "series-contains", "B1(*)", "A4(0)")[0] == 0
    assert run_json(capsys, "series-contains", "E5(*)", "A3")[0] == 1
    assert run(capsys, "series-contains", "Z(*)", "A3")[0] == 4


def test_identities(tmp_path, capsys):
    path = write_doc(tmp_path, constants("B3", ()))
    code, out = run_json(capsys, "identities", path)
    assert code == 0
    assert out["identities"]["anticommutative"] and out["identities"]["flexible"]
    assert not out["identities"]["commutative"]
    assert run_json(capsys, "identities", path, "--identity", "xy = yx")[0] == 1
    assert run(capsys, "identities", path, "--identity", "xy = ")[0] == 2


def test_components(capsys):
    code, out = run_json(capsys, "components", "--variety", "bicommutative")
    assert code == 0
    assert out["rigid"] == ["D1(0,0)", "D1(1,0)", "E1(0,0,0,0)"]
    assert run(capsys, "components", "--variety", "associative")[0] == 2


@pytest.mark.xfail(strict=True, reason="D1(1,0) and D1(0,0) are isomorphic, so their closures coincide")
def test_bicommutative_has_three_components(capsys):
    _, out = run_json(capsys, "components", "--variety", "bicommutative")
    assert len(out["components"]) == 3


def test_verify(capsys):
    code, out = run_json(capsys, "verify", "--edge", "A2-A3", "--edge", "A1-E5", "--samples", "3")
    assert code == 0 and out["status"] == "PASS"
    assert len(out["results"]) == 2
    code, out = run_json(capsys, "verify", "--nondeg", "E4", "--samples", "1")
    assert code == 0 and out["status"] == "PASS"
    assert run(capsys, "verify", "--edge", "Z-Z")[0] == 4


def test_export_dot(capsys):
    code, out = run(capsys, "export-dot", "--graph", "full")
    assert code == 0
    assert out.startswith("digraph")
    assert '"D1(alpha,beta)" -> "B2(alpha)"' in out
    assert 'condition="gamma in {alpha, 1-alpha+beta}"' in out
    for graph in ("flexible", "bicommutative", "lattice", "commutative-lattice"):
        code, out = run(capsys, "export-dot", "--graph", graph)
        assert code == 0 and out.rstrip().endswith("}")


def test_data_override(tmp_path, capsys):
    broken = tmp_path / "bad.json"
    broken.write_text("[]")
    assert run(capsys, "--data", str(broken), "level", "A3")[0] == 2


def test_bad_arguments(capsys):
    assert run(capsys)[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "--tol", "-1", "level", "A3")[0] == 2
