import json
import subprocess
import sys
from pathlib import Path

import pytest

from icopt import cli

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture(scope="module")
def seeded(tmp_path_factory):
    d = tmp_path_factory.mktemp("problems")
    assert cli.main(["--seed-examples", str(d)]) == 0
    return d


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_seed_examples(seeded):
    assert sorted(p.name for p in seeded.iterdir()) == [f"example{i}.json" for i in range(1, 5)]


def test_solve_example1(capsys, seeded):
    code, out, _ = run(capsys, "solve", seeded / "example1.json")
    data = json.loads(out)
    assert code == 0
    assert data["optimal_length"] == 2 and data["code_count"] == 3


def test_solve_example3(capsys, seeded):
    code, out, _ = run(capsys, "solve", seeded / "example3.json")
    data = json.loads(out)
    assert (data["mu"], data["code_count"]) == (2, 56)


def test_solve_deterministic(capsys, seeded):
    outs = {run(capsys, "solve", seeded / "example4.json")[1] for _ in range(2)}
    assert len(outs) == 1


def test_malformed_file(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    code, out, err = run(capsys, "solve", bad)
    assert code == 1 and out == "" and "invalid JSON" in err
    assert run(capsys, "solve", tmp_path / "missing.json")[0] == 1


def test_invalid_problem(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"n": 2, "receivers": [{"wants": [2], "knows": [2]}]}))
    assert run(capsys, "solve", bad)[0] == 1


def test_budget_exit(capsys, seeded, monkeypatch):
    monkeypatch.setenv("ICOPT_BUDGET_BITS", "2")
    code, _, err = run(capsys, "solve", seeded / "example1.json")
    assert code == 2 and "budget" in err
    assert run(capsys, "verify", seeded / "example1.json", "--length", "1")[0] == 2


def test_verify_example1(capsys, seeded):
    code, out, _ = run(capsys, "verify", seeded / "example1.json", "--length", "1")
    assert code == 0
    assert "verdict: infeasible" in out and "|S'(c)|: 8" in out and "|S(c)|: 0" in out


def test_verify_example2(capsys, seeded):
    out = run(capsys, "verify", seeded / "example2.json", "--length", "1")[1]
    assert "verdict: infeasible" in out and "|S'(c)|: 16" in out
    out = run(capsys, "verify", seeded / "example2.json", "--length", "3")[1]
    assert "verdict: feasible-but-suboptimal" in out and "lambda>0 member" in out


def test_export_dot(capsys, seeded, tmp_path):
    code, _, _ = run(capsys, "export", seeded / "example1.json", "--length", "2", "--format", "dot", "--out", tmp_path)
    assert code == 0
    text = (tmp_path / "graph.dot").read_text()
    assert text == (GOLDEN / "example1_c2.dot").read_text()
    assert sum("->" in line for line in text.splitlines()) == 17


def test_export_matrices(capsys, seeded, tmp_path):
    run(capsys, "export", seeded / "example1.json", "--length", "2", "--format", "matrices", "--out", tmp_path)
    data = json.loads((tmp_path / "matrices.json").read_text())
    assert data["A"] == ["100", "100", "010", "010", "001", "001", "010", "001", "100"]
    assert data["M"] == ["100", "010", "001"]
    run(capsys, "export", seeded / "example1.json", "--length", "3", "--format", "matrices", "--out", tmp_path)
    data = json.loads((tmp_path / "matrices.json").read_text())
    assert data["M"] == ["100", "010", "001"] and data["code"][-1] == "0"
    run(capsys, "export", seeded / "example1.json", "--length", "1", "--format", "matrices", "--out", tmp_path)
    assert "M" not in json.loads((tmp_path / "matrices.json").read_text())


@pytest.mark.parametrize(
    "argv",
    [
        ["export", "FILE", "--length", "2", "--format", "png"],
        ["verify", "FILE"],
        ["frobnicate"],
        [],
        ["verify", "FILE", "--length", "0"],
    ],
)
def test_usage_errors(capsys, seeded, argv):
    argv = [str(seeded / "example1.json") if a == "FILE" else a for a in argv]
    assert run(capsys, *argv)[0] == 64


def test_analyze(capsys, seeded):
    code, out, _ = run(capsys, "analyze", seeded / "example1.json", "--minmax")
    data = json.loads(out)
    assert code == 0 and data["minmax"] == 2 and len(data["winners"]) == 3
    assert all(entry["max_used"] == 2 for entry in data["codes"])
    out = run(capsys, "analyze", seeded / "example4.json", "--minmax")[1]
    assert json.loads(out) == json.loads((GOLDEN / "example4_analysis.json").read_text())


def test_analyze_no_side_info(capsys, tmp_path):
    f = tmp_path / "p.json"
    f.write_text(json.dumps({"n": 2, "receivers": [{"wants": 1}, {"wants": 2}]}))
    data = json.loads(run(capsys, "analyze", f, "--minmax")[1])
    assert data["minmax"] == 1 and data["winners"] == [["x1", "x2"]]


def test_hidden_oracle(capsys, seeded):
    data = json.loads(run(capsys, "oracle", seeded / "example3.json")[1])
    assert data["optimal_length"] == 3 and data["code_count"] == 56
    _, out, _ = run(capsys, "solve", seeded / "example3.json")
    assert sorted(map(sorted, data["codes"])) == sorted(map(sorted, json.loads(out)["codes"]))


def test_module_entry_point(seeded):
    proc = subprocess.run(
        [sys.executable, "-m", "icopt", "solve", str(seeded / "example1.json")],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["code_count"] == 3
    proc = subprocess.run([sys.executable, "-m", "icopt", "bogus"], capture_output=True, text=True)
    assert proc.returncode == 64
