import json

import pytest
from click.testing import CliRunner

from mvmodal.cli import main


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def model_file(tmp_path):
    path = tmp_path / "m.json"
    path.write_text(json.dumps({
        "n": 3, "atoms": ["q"],
        "worlds": [
            {"id": "w1", "val": {"q": "1/2"}, "pi": "2/2"},
            {"id": "w2", "val": {"q": "2/2"}, "pi": "1/2"},
        ],
    }))
    return str(path)


def test_eval(runner, model_file):
    r = runner.invoke(main, ["eval", "--formula", "dia q", "--model", model_file,
                             "--world", "w1", "--variant", "mvkd45"])
    assert r.exit_code == 0
    assert r.output.strip() == "1/2"


def test_taut_success(runner):
    r = runner.invoke(main, ["taut", "--formula", "q -> q", "--variant", "mvs5"])
    assert r.exit_code == 0
    assert "tautology" in r.output


def test_taut_counterexample_exit_1(runner):
    r = runner.invoke(main, ["taut", "--formula", "q", "--variant", "mvs5"])
    assert r.exit_code == 1
    assert "not a tautology" in r.output
    assert "world" in r.output


def test_taut_qfl2_totality(runner):
    r = runner.invoke(main, ["taut", "--variant", "qfl2",
                             "--formula", "(q <| r) \\/ (r <| q)",
                             "--atoms", "q,r", "--n", "3"])
    assert r.exit_code == 0


def test_bad_formula_exit_2(runner):
    r = runner.invoke(main, ["taut", "--formula", "q ->"])
    assert r.exit_code == 2


def test_cap_exit_3(runner):
    r = runner.invoke(main, ["taut", "--formula", "q -> q", "--variant", "mvkd45",
                             "--atoms", "q,r,s", "--cap", "100"])
    assert r.exit_code == 3


def test_countermodel_writes_file(runner, tmp_path):
    out = tmp_path / "cm.json"
    r = runner.invoke(main, ["countermodel", "--formula", "dia q",
                             "--variant", "mvkd45", "--out", str(out)])
    assert r.exit_code == 1
    data = json.loads(out.read_text())
    assert data["n"] == 3


def test_translate(runner):
    r = runner.invoke(main, ["translate", "--formula", "q <| r", "--target", "mvs5"])
    assert r.exit_code == 0
    assert r.output.strip() == "dia (p@ /\\ q) -> dia (p@ /\\ r)"
    r2 = runner.invoke(main, ["translate", "--formula", "q <| r",
                              "--target", "mvs5", "--double-star"])
    assert "[2/2]dia p@" in r2.output
    r3 = runner.invoke(main, ["translate", "--formula", "q <| r", "--target", "mvkd45"])
    assert r3.output.strip() == "dia q -> dia r"


def test_faithfulness(runner):
    r = runner.invoke(main, ["faithfulness", "--atoms", "q", "--max-size", "4"])
    assert r.exit_code == 0
    assert "0 disagreements" in r.output


def test_axioms_with_report(runner, tmp_path):
    r = runner.invoke(main, ["axioms", "--system", "mvs5", "--per-schema", "2",
                             "--report-dir", str(tmp_path)])
    assert r.exit_code == 0
    assert "0 failures" in r.output
    assert (tmp_path / "axioms-mvs5-n3.csv").exists()
    assert (tmp_path / "axioms-mvs5-n3.png").exists()


def test_measure_pipeline(runner, model_file, tmp_path):
    a = tmp_path / "a.json"
    m2 = tmp_path / "m2.json"
    r = runner.invoke(main, ["measure", "from-model", "--model", model_file,
                             "--out", str(a)])
    assert r.exit_code == 0
    r2 = runner.invoke(main, ["measure", "check", "--file", str(a)])
    assert r2.exit_code == 0
    r3 = runner.invoke(main, ["measure", "reconstruct", "--file", str(a),
                              "--out", str(m2)])
    assert r3.exit_code == 0
    assert json.loads(m2.read_text())["atoms"] == ["q"]


def test_proof_check_and_spotcheck(runner):
    from importlib import resources

    path = str(resources.files("mvmodal") / "corpus" / "ln-mp.json")
    r = runner.invoke(main, ["proof", "check", "--file", path])
    assert r.exit_code == 0 and r.output.strip() == "ok"
    r2 = runner.invoke(main, ["proof", "spotcheck", "--file", path])
    assert r2.exit_code == 0
    assert "tautology" in r2.output


def test_proof_check_rejects_corrupt(runner, tmp_path):
    from importlib import resources

    data = json.loads((resources.files("mvmodal") / "corpus" / "ln-mp.json").read_text())
    data["lines"][2]["formula"] = "s -> (q -> (q -> q))"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    r = runner.invoke(main, ["proof", "check", "--file", str(bad)])
    assert r.exit_code == 1
    assert "line 3" in r.output


def test_degenerate_n2(runner):
    r = runner.invoke(main, ["degenerate-n2", "--depth", "1", "--atoms", "q"])
    assert r.exit_code == 0
    assert "agree" in r.output


def test_altbox_k(runner):
    r = runner.invoke(main, ["altbox-k"])
    assert r.exit_code == 1
    assert "1/2" in r.output
