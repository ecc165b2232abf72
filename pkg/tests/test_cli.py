import json
import subprocess
import sys

import pytest

from degenlab import Matrix, thm31_witness
from degenlab.cli import main


def run(*argv):
    return main([str(a) for a in argv])


def test_build_then_verify(tmp_path, capsys):
    w = tmp_path / "w.json"
    assert run("witness-build", "--family", "thm31", "--a", 1, "--b", 3, "-o", w) == 0
    assert run("witness-verify", w) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["verdict"] == "valid"


def test_invalid_witness_exits_2(tmp_path):
    d = thm31_witness(1, 3).to_json()
    d["nu"] = {"entries": [["0", "y"], ["0", "0"]]}
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(d))
    assert run("witness-verify", p, "-o", tmp_path / "r.json") == 2


def test_impossible_pair_is_usage_error(tmp_path, capsys):
    assert run("witness-build", "--family", "thm31", "--a", 1, "--b", 2) == 1
    assert "a <= b" in capsys.readouterr().err


def test_outputs_are_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        assert run("witness-build", "--family", "cor45", "--i", 2, "--j", 1, "-o", p) == 0
    assert a.read_bytes() == b.read_bytes()
    d = json.loads(a.read_text())
    assert list(d) == sorted(d)


def test_poset_dot(tmp_path):
    p = tmp_path / "poset.dot"
    assert run("poset", "--dim", 1, "--max-n", 5, "--format", "dot", "-o", p) == 0
    text = p.read_text()
    assert text.startswith("digraph")
    assert text.count("->") == 4  # R->2, 1->3, 2->4, 3->5


def _screen_inputs(tmp_path, xi_rows):
    from degenlab import dim1_ring
    S = dim1_ring().s_ring
    T = S.extend("t")
    xi = {"xi": Matrix.parse(T, xi_rows).to_json(), "t_var": "t"}
    mu = {"mu": Matrix.parse(S, [["0", "y"], ["0", "0"]]).to_json()}
    (tmp_path / "xi.json").write_text(json.dumps(xi))
    (tmp_path / "mu.json").write_text(json.dumps(mu))
    return tmp_path / "xi.json", tmp_path / "mu.json"


def test_screen_trace_mismatch_exits_2(tmp_path):
    xi, mu = _screen_inputs(tmp_path, [["t", "y"], ["0", "0"]])
    assert run("screen", "--xi", xi, "--mu", mu, "-o", tmp_path / "r.json") == 2
    assert json.loads((tmp_path / "r.json").read_text())["verdict"] == "obstructed"


def test_screen_consistent_exits_0(tmp_path):
    xi, mu = _screen_inputs(tmp_path, [["t*y^2", "y^3"], ["-t^2*y", "-t*y^2"]])
    assert run("screen", "--xi", xi, "--mu", mu, "--j-max", 1, "-o", tmp_path / "r.json") == 0


def test_fitting_screen_through_presentations(tmp_path):
    from degenlab import CMClass
    from degenlab.catalog import catalog_ideal, dim1_ring
    from degenlab.degeneration import presentation_of
    R = dim1_ring()
    files = {}
    for n in (1, 3):
        p = tmp_path / f"p{n}.json"
        p.write_text(json.dumps({"ring": R.descriptor(),
                                 "presentation": presentation_of(catalog_ideal(CMClass(1, "idealA", n), R)).to_json()}))
        files[n] = p
    assert run("screen", "--m-pres", files[1], "--n-pres", files[3], "-o", tmp_path / "a") == 0
    assert run("screen", "--m-pres", files[3], "--n-pres", files[1], "-o", tmp_path / "b") == 2


def test_zwara_round_trip(tmp_path):
    s = tmp_path / "seq.json"
    assert run("zwara-build", "--example", "-o", s) == 0
    assert run("zwara-verify", s, "-o", tmp_path / "r.json") == 0
    r = json.loads((tmp_path / "r.json").read_text())
    assert r["nilpotent"] and r["nilpotency_index"] == 2


def test_zwara_precondition_failure_exits_2(tmp_path):
    from degenlab import dim1_ring
    d = {"ring": dim1_ring().descriptor(), "alpha": {"entries": [["0"]]}, "x": "y", "M": [["x"], ["y"]]}
    p = tmp_path / "in.json"
    p.write_text(json.dumps(d))
    assert run("zwara-build", p, "-o", tmp_path / "o.json") == 2


@pytest.mark.parametrize("argv", [
    ["mf-validate", "--catalog", "(x,y^3)"],
    ["mf-sharp", "--catalog", "(x,y^2)"],
    ["mf-double-sharp", "--catalog", "(x,y^2)", "--field", "QQI"],
    ["mf-syzygy", "--catalog", "R"],
    ["knoerrer-module", "--h", "2", "--dim", "5"],
    ["prop56", "--h", "2"],
    ["witness-build", "--family", "knoerrer-lift", "--a", "1", "--b", "3"],
])
def test_subcommands_succeed(argv, capsys):
    assert main(argv) == 0
    json.loads(capsys.readouterr().out)


def test_dry_run_does_not_compute(tmp_path, capsys):
    assert run("poset", "--dim", 1, "--max-n", 50, "--dry-run") == 0
    assert json.loads(capsys.readouterr().out)["dry_run"] is True


@pytest.mark.parametrize("argv", [
    [], ["no-such-command"], ["witness-verify", "/nonexistent.json"],
    ["mf-validate", "--catalog", "(x,w)"], ["poset", "--dim", "1", "--max-n", "0"],
])
def test_usage_errors_exit_1(argv):
    assert main(argv) == 1


def test_budget_profile(monkeypatch, tmp_path):
    monkeypatch.setenv("DEGENLAB_BUDGET_PROFILE", "huge")
    assert run("poset", "--dim", 1, "--max-n", 2) == 1
    monkeypatch.setenv("DEGENLAB_BUDGET_PROFILE", "small")
    assert run("poset", "--dim", 1, "--max-n", 2, "-o", tmp_path / "p.json") == 0


def test_console_script_entry():
    r = subprocess.run([sys.executable, "-m", "degenlab.cli", "poset", "--dim", "2", "--max-n", "1"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["dim"] == 2
