import json
import math

import pytest

from denomlab.cli import dispatch


def run(capsys, *argv):
    code = dispatch(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analytic_constant(capsys):
    code, out, _ = run(capsys, "analytic", "--fn", "M", "--at", "1")
    assert code == 0
    payload = json.loads(out)
    assert abs(float(payload["value"]) - 16 / math.pi**2) < 1e-8


def test_analytic_branch_reported(capsys):
    code, out, _ = run(capsys, "analytic", "--fn", "H", "--at", "0.5")
    assert code == 0
    assert json.loads(out)["branch"] == "1/4<=t<=1"


def test_qmin_example(capsys):
    code, out, _ = run(capsys, "qmin", "--x", "0.415", "--delta", "0.01",
                       "--region", "interval:-1/2,1/2:oo")
    assert code == 0
    payload = json.loads(out)
    assert payload == {"q": 12, "witness": "5/12"}


def test_farey_csv(capsys):
    code, out, _ = run(capsys, "farey", "--n", "1", "--Q", "3")
    assert code == 0
    assert out.splitlines() == ["q,p1", "1,0", "2,1", "3,1", "3,2"]


def test_unknown_flag_exit_2(capsys):
    assert run(capsys, "qmin", "--bogus", "1")[0] == 2


def test_unknown_subcommand_exit_2(capsys):
    assert run(capsys, "frobnicate")[0] == 2


def test_help_exit_0(capsys):
    code, out, err = run(capsys, "--help")
    assert code == 0
    for word in ("qmin", "farey", "analytic", "experiment", "resonance"):
        assert word in out


def test_bad_region_exit_2(capsys):
    code, _, err = run(capsys, "qmin", "--x", "0.5", "--delta", "0.1",
                       "--region", "wedge:0,1")
    assert code == 2 and "error" in err


def test_plan_file(tmp_path, capsys):
    plan = tmp_path / "plan.json"
    plan.write_text(json.dumps({"n": 1, "mode": "grid-discrete",
                                "delta": "1/50", "N": 50}))
    code, out, _ = run(capsys, "experiment", "qmin-dist", "--plan", str(plan),
                       "--L-grid", "1")
    assert code == 0
    assert out.splitlines()[0] == "L,empirical_survival,model_survival"


def test_malformed_plan_exit_2(tmp_path, capsys):
    plan = tmp_path / "plan.json"
    plan.write_text("{not json")
    code, _, err = run(capsys, "experiment", "qmin-dist", "--plan", str(plan))
    assert code == 2 and "line" in err


def test_plan_errors_enumerated(tmp_path, capsys):
    plan = tmp_path / "plan.json"
    plan.write_text(json.dumps({"n": -3, "mode": "grid-discrete",
                                "delta": "bogus", "seed": -1}))
    code, _, err = run(capsys, "experiment", "qmin-dist", "--plan", str(plan))
    assert code == 2
    for frag in ("n must be", "delta", "seed"):
        assert frag in err


def test_grid_warning_emitted(capsys):
    code, _, err = run(capsys, "experiment", "qmin-dist", "--n", "1",
                       "--mode", "grid-discrete", "--delta", "1/100",
                       "--N", "10", "--L-grid", "1")
    assert code == 0 and "warning" in err


def test_output_file_atomic(tmp_path, capsys):
    out_path = tmp_path / "sub" / "x.csv"
    out_path.parent.mkdir()
    code, _, _ = run(capsys, "farey", "--n", "1", "--Q", "4",
                     "--out", str(out_path))
    assert code == 0
    assert out_path.read_text().startswith("q,p1\n")
    assert not list(out_path.parent.glob("*.tmp*"))


def test_resonance_csv_header(capsys):
    code, out, _ = run(capsys, "resonance", "--n", "2", "--rho", "0.1,0.05",
                       "--samples", "20")
    assert code == 0
    assert out.splitlines()[0] == "rho,q10,q50,q90,slope_running"


def test_moment_divergence_exit_2(capsys):
    code, _, err = run(capsys, "experiment", "qmin-moment", "--n", "1",
                       "--mode", "grid-discrete", "--delta", "1/10",
                       "--N", "10", "--alpha", "5")
    assert code == 2 and "diverges" in err
