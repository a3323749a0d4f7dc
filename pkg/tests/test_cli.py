import json
import subprocess
import sys

import pytest

from qua.cli import main


def write_spec(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


@pytest.fixture
def fock(tmp_path):
    return write_spec(tmp_path, "fock.json", {"kind": "gwa-weight", "n": 2, "omega": ["1", "1", "1"], "radius": 5})


@pytest.fixture
def seed(tmp_path):
    return write_spec(tmp_path, "seed.json", {"kind": "gwa-weight", "n": 2, "omega": ["c1", "1", "1"], "params": ["c1"]})


def test_identities_usage_error(capsys):
    assert main(["identities", "--n", "0"]) == 2
    assert "usage error" in capsys.readouterr().err


def test_identities_pass(capsys):
    assert main(["identities", "--n", "2", "--format", "json"]) == 0
    report = json.loads(capsys.readouterr().out)
    checks = {r["check"] for r in report}
    assert {"qg1", "qg7", "braid", "serre"} <= checks
    assert all(set(r) == {"check", "indices", "status", "residual"} for r in report)


def test_identities_subset(capsys):
    assert main(["identities", "--n", "3", "--only", "qg4"]) == 0
    out = capsys.readouterr().out
    assert "qg4" in out and "qg1" not in out


def test_identities_unknown_tag(capsys):
    assert main(["identities", "--n", "2", "--only", "qg99"]) == 2


def test_identities_jobs_are_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["identities", "--n", "2", "--format", "json", "--output", str(a)]) == 0
    assert main(["identities", "--n", "2", "--format", "json", "--jobs", "2", "--output", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_pi_check(capsys):
    assert main(["pi-check", "--n", "2"]) == 0


def test_decompose_fock(fock, capsys):
    assert main(["module", "decompose", "--spec", fock, "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    complete = [p for p in doc["pieces"] if p["complete"]]
    assert [p["dimension"] for p in complete] == [1, 3, 6, 10, 15, 21]
    assert complete[2]["highest_weight"] == ["q^2", "1"]


def test_classify_mixed_partition(seed, capsys):
    assert main(["module", "classify", "--spec", seed, "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    part = doc["partition"]
    assert part["N_a"] and part["T_a"]
    assert doc["closed"] and doc["covers"]


def test_mu_solve(seed, capsys):
    assert main(["module", "mu-solve", "--spec", seed, "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["solutions"][0]["tag"] == "identity"
    assert doc["solutions"][0]["mu"] == doc["weight"]


def test_malformed_literal(tmp_path, capsys):
    bad = write_spec(tmp_path, "bad.json", {"kind": "gwa-weight", "n": 1, "omega": ["c1", "q^"], "params": ["c1"]})
    assert main(["module", "build", "--spec", bad]) == 2
    err = capsys.readouterr().err
    assert "parse error" in err and "position" in err


def test_rejected_highest_weight(tmp_path, capsys):
    spec = write_spec(tmp_path, "hw.json", {"kind": "highest-weight", "n": 2, "lambda": ["q", "q"]})
    assert main(["module", "build", "--spec", spec]) == 2
    assert "completely pointed" in capsys.readouterr().err


def test_export_dot(fock, capsys):
    assert main(["export", "--spec", fock, "--radius", "2", "--max-degree", "2", "--format", "dot"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("digraph")
    assert out.count('[label="(') == 10


def test_export_json_roundtrip(fock, tmp_path, capsys):
    out = tmp_path / "w.json"
    assert main(["export", "--spec", fock, "--radius", "2", "--format", "json", "--output", str(out)]) == 0
    from qua.modrep import window_from_json, window_to_json

    text = out.read_text()
    assert window_to_json(window_from_json(text)) == text


def test_module_rank_guard(fock, capsys):
    assert main(["module", "build", "--spec", fock, "--n", "7"]) == 2


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "qua", "identities", "--n", "1", "--only", "rel1"], capture_output=True, text=True)
    assert r.returncode == 0
    assert "rel1" in r.stdout
