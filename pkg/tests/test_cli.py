import json

import pytest

from braidlab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err


def test_braid_delete(capsys):
    assert run(capsys, "braid", "--n", "3", "--word", "A(1,3)", "--delete", "2")[:2] == (0, "s1 s1")


def test_braid_brunnian(capsys):
    assert run(capsys, "braid", "--n", "3", "--word", "[A(1,2),A(1,3)]", "--brunnian")[:2] == (0, "true")


def test_braid_trivial_empty(capsys):
    assert run(capsys, "braid", "--n", "2", "--word", "", "--trivial")[:2] == (0, "true")


def test_braid_several_actions(capsys):
    code, out, _ = run(capsys, "braid", "--word", "n=3: A(1,3)", "--qbrunnian", "--linking")
    assert code == 0
    assert out.splitlines()[0] == "linking: 0 0 1"
    assert out.splitlines()[-1] == "qbrunnian: false"


def test_braid_errors(capsys):
    assert run(capsys, "braid", "--n", "3", "--word", "s1 +")[0] == 2
    assert run(capsys, "braid", "--n", "3", "--word", "s3")[0] == 3
    assert run(capsys, "braid", "--n", "3", "--word", "s1", "--linking")[0] == 2
    assert run(capsys, "braid", "--n", "3", "--word", "s1", "--delete", "5")[0] == 3


def test_theta_commands(capsys):
    assert run(capsys, "theta", "--n", "1", "--word", "y1")[:2] == (0, "s1 s1")
    code, out, _ = run(capsys, "theta", "--n", "2", "--word", "y2", "--linking")
    assert code == 0 and out.splitlines()[-1] == "lk(1,2)=1, lk(1,3)=1"
    code, out, _ = run(capsys, "theta", "--n", "2", "--word", "[y1,y2^-1]", "--brunnian")
    assert code == 0 and out.splitlines()[-1] == "true"
    assert run(capsys, "theta", "--n", "2", "--word", "y3")[0] == 3


def test_gr_commands(capsys):
    assert run(capsys, "gr", "theta", "--n", "3", "--expr", "y1")[:2] == (0, "B(1,4)+B(2,4)+B(3,4)")
    assert run(capsys, "gr", "rank", "--n", "3", "--m", "3")[:2] == (0, "2")
    assert run(capsys, "gr", "delta-example")[:2] == (0, "PASS (coefficients -1, 2; independence rank 3)")
    code, out, _ = run(capsys, "gr", "check-relations", "--n", "4")
    assert code == 0 and "0 nonzero" in out
    code, out, _ = run(capsys, "--json", "gr", "theta-matrix", "--n", "2", "--m", "3")
    doc = json.loads(out)
    assert code == 0 and doc["result"]["elementary_divisors"] == [1, 1]
    assert run(capsys, "gr", "rank", "--n", "3", "--m", "9")[0] == 4


def test_homology_commands(capsys):
    code, out, _ = run(capsys, "--json", "homology", "--m", "2", "--N", "4", "--assert-known")
    doc = json.loads(out)
    assert code == 0 and doc["passed"]
    cells = {(c["lie_degree"], c["simplicial_degree"]): c["free_rank"] for c in doc["result"]["homology"]}
    assert cells[(2, 2)] == 1 and cells[(1, 1)] == 1
    code, out, _ = run(capsys, "homology", "--m", "1", "--N", "6")
    assert code == 0
    assert [line for line in out.splitlines() if ": Z" in line] == ["m=1 t=1: Z  (basis 1, boundary rank 0)"]
    assert run(capsys, "homology", "--m", "2", "--N", "0")[0] == 4


def test_assertion_exit_code(capsys, monkeypatch):
    import braidlab.cli as cli

    monkeypatch.setattr(cli, "_known_homology", lambda m, t: 7)
    assert run(capsys, "homology", "--m", "1", "--N", "2", "--assert-known")[0] == 5


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--N", "3", "--seed", "42", "--samples", "20")
    assert code == 0 and "FAIL" not in out
    code, out, _ = run(capsys, "verify", "--N", "4", "--instance", "ap", "--samples", "20")
    assert (code, out) == (0, "identities_ap: PASS")
    assert run(capsys, "verify", "--N", "0")[0] == 4


def test_verify_failure_exit_code(capsys, monkeypatch):
    import braidlab.cli as cli
    from braidlab.simplicial import IdentityReport

    def broken(*args, **kwargs):
        rep = IdentityReport("fs1", 1)
        rep.record("d_i s_j", False, {"level": 1, "indices": [0, 0], "element": "y1"})
        return rep

    monkeypatch.setattr(cli, "verify_simplicial_identities", broken)
    code, out, _ = run(capsys, "verify", "--N", "2", "--instance", "fs1")
    assert code == 1 and "witness" in out


def test_reports_are_reproducible(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["--json", "--seed", "7", "--out", str(a), "verify", "--N", "2", "--samples", "10"]) == 0
    assert main(["verify", "--N", "2", "--samples", "10", "--json", "--seed", "7", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    doc = json.loads(a.read_text())
    assert doc["seed"] == 7 and doc["version"] and doc["budgets"]["samples"] == 10


def test_wall_clock_budget(capsys, monkeypatch):
    monkeypatch.setenv("BRAIDLAB_BUDGET_MS", "1")
    assert run(capsys, "homology", "--m", "4", "--N", "6")[0] == 4


def test_bad_arguments(capsys):
    assert main(["nonsense"]) == 2
    assert main(["--budget-level", "0", "gr", "rank", "--n", "2", "--m", "1"]) == 4
