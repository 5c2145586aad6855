"""CLI contract: exit codes, determinism, output formats."""

import json

from click.testing import CliRunner

from hopfinv.cli import main
from hopfinv.double import group_algebra
from hopfinv.structio import algebra_to_dict
from hopfinv.scalars import Cyc


def run(*args):
    return CliRunner().invoke(main, list(args))


def test_invariant_kuperberg():
    res = run("invariant", "--p", "2", "--q", "1", "--l", "3", "--method", "kuperberg")
    assert res.exit_code == 0
    assert "Z[kuperberg](L(2,1); l=3) = 4" in res.output


def test_invariant_all_methods_agree():
    res = run("invariant", "--p", "2", "--q", "1", "--l", "3", "--method", "all")
    assert res.exit_code == 0
    assert res.output.count("= 4") == 3  # kuperberg, hennings-closed, hennings-diagram


def test_invariant_invalid_input():
    res = run("invariant", "--p", "4", "--q", "2", "--l", "3")
    assert res.exit_code == 2
    res = run("invariant", "--p", "2", "--q", "1", "--l", "4")
    assert res.exit_code == 2


def test_invariant_budget_exhaustion():
    res = run(
        "invariant", "--p", "5", "--q", "2", "--l", "3",
        "--method", "hennings-diagram", "--budget", "10",
    )
    assert res.exit_code == 3


def test_verify_theorem_grid():
    res = run("verify-theorem", "--l", "3", "--pmax", "4")
    assert res.exit_code == 0
    assert "5/5 grid points verified" in res.output


def test_verify_theorem_empty_grid_and_even_l():
    res = run("verify-theorem", "--l", "3", "--pmax", "1")
    assert res.exit_code == 0
    res = run("verify-theorem", "--l", "4", "--pmax", "5")
    assert res.exit_code == 2


def test_verify_theorem_deterministic_json(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    r1 = run("verify-theorem", "--l", "3", "--pmax", "3", "--format", "json", "--out", str(a))
    r2 = run("verify-theorem", "--l", "3", "--pmax", "3", "--format", "json", "--out", str(b))
    assert r1.exit_code == 0 and r2.exit_code == 0
    assert a.read_bytes() == b.read_bytes()
    rows = json.loads(a.read_text())
    assert [(r["p"], r["q"]) for r in rows] == [(2, 1), (3, 1), (3, 2)]
    assert all(r["equal"] for r in rows)


def test_verify_axioms_builtin_and_file(tmp_path):
    res = run("verify-axioms", "--uqsl2", "3")
    assert res.exit_code == 0
    assert "FAIL" not in res.output

    A = group_algebra(3, 3)
    obj = algebra_to_dict(A)
    one = Cyc.one(3).to_json()
    obj["antipode"] = [[i, i, one] for i in range(3)]
    broken = tmp_path / "broken.json"
    broken.write_text(json.dumps(obj))
    res = run("verify-axioms", "--file", str(broken))
    assert res.exit_code == 1
    assert "antipode axiom" in res.output

    res = run("verify-axioms", "--file", str(tmp_path / "missing.json"))
    assert res.exit_code == 2


def test_double_command(tmp_path):
    out = tmp_path / "double.json"
    res = run("double", "--taft", "2", "--l", "3", "--out", str(out))
    assert res.exit_code == 0
    assert "dim D(H) = 16" in res.output
    assert "factorizability rank = 16" in res.output
    assert out.exists()

    res = run("double", "--group", "3", "--l", "3")
    assert res.exit_code == 0
    assert "dim D(H) = 9" in res.output

    bad = tmp_path / "bad.json"
    bad.write_text("{oops")
    res = run("double", "--file", str(bad))
    assert res.exit_code == 2
