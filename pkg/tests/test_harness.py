"""Scenario config parsing, validation, verification verdicts, report
round-trips, and the CLI front end."""

import json
import math
import subprocess
import sys

import pytest

from hauscomm import harness
from hauscomm.errors import HauscommError, InvalidInputError

GOOD_CFG = """
# comment
[scenario.alpha]
theorem = T3.2
n = 1
kernel = annulus(1,2)
field = radial
symbol = power-beta(0.25)
testfn = shell-indicator(0)
p = 2
q = 4
beta = 0.25
k_min = -6
k_max = 4
dilations = 0.5,1,2
tol = 1e-5
"""


def _write(tmp_path, text, name="scen.cfg"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_load_scenarios_roundtrip(tmp_path):
    scens = harness.load_scenarios(_write(tmp_path, GOOD_CFG))
    assert len(scens) == 1
    s = scens[0]
    assert s.scenario_id == "alpha"
    assert s.theorem == "T3.2" and s.n == 1
    assert s.exponents == {"p": 2.0, "q": 4.0, "beta": 0.25}
    assert s.dilations == (0.5, 1.0, 2.0)
    assert s.k_min == -6 and s.tol == 1e-5


def test_load_rejects_unknown_key(tmp_path):
    bad = GOOD_CFG + "\nwibble = 3\n"
    with pytest.raises(InvalidInputError, match="unknown key"):
        harness.load_scenarios(_write(tmp_path, bad))


def test_load_rejects_missing_required_key(tmp_path):
    bad = "[scenario.x]\ntheorem = T3.2\nn = 1\nkernel = annulus(1,2)\n"
    with pytest.raises(InvalidInputError, match="missing keys"):
        harness.load_scenarios(_write(tmp_path, bad))


def test_load_rejects_stray_lines(tmp_path):
    with pytest.raises(InvalidInputError, match="outside any scenario"):
        harness.load_scenarios(_write(tmp_path, "p = 2\n"))
    with pytest.raises(InvalidInputError, match="scenario.NAME"):
        harness.load_scenarios(_write(tmp_path, "[suite]\n"))


def _scenario(**over):
    base = dict(scenario_id="t", theorem="T3.2", n=1, kernel="annulus(1,2)",
                field="radial", symbol="power-beta(0.25)",
                testfn="shell-indicator(0)",
                exponents={"p": 2.0, "q": 4.0, "beta": 0.25},
                k_min=-6, k_max=4, dilations=(0.5, 1.0, 2.0), tol=1e-5)
    base.update(over)
    return harness.Scenario(**base)


def test_validate_scenario():
    assert harness.validate_scenario(_scenario()) == []
    bad = _scenario(exponents={"p": 2.0, "q": 3.0, "beta": 0.25})
    assert harness.validate_scenario(bad) == ["1/q = 1/p - beta/n"]
    with pytest.raises(InvalidInputError):
        harness.validate_scenario(_scenario(theorem="T9.9"))


def test_run_scenario_rejects_violations():
    bad = _scenario(exponents={"p": 2.0, "q": 3.0, "beta": 0.25})
    with pytest.raises(HauscommError, match="violates hypotheses"):
        harness.run_scenario(bad)


def test_zero_kernel_scenario_passes_trivially():
    rep = harness.run_scenario(_scenario(kernel="zero"))
    assert rep.verdict == "pass"
    assert rep.lhs_norm == 0.0 and rep.ratio == 0.0
    assert rep.K_value == 0.0


def test_run_scenario_is_deterministic():
    a = harness.run_scenario(_scenario())
    b = harness.run_scenario(_scenario())
    assert a == b


def test_budget_enforced():
    tight = _scenario(ratio_budget=1e-6)
    rep = harness.run_scenario(tight)
    assert rep.verdict == "fail"


def test_refine_study_shape():
    rows = harness.refine_study(_scenario(), levels=2)
    assert [r["level"] for r in rows] == [0, 1]
    for r in rows:
        assert math.isfinite(r["ratio"]) and r["rhs"] > 0
    with pytest.raises(InvalidInputError):
        harness.refine_study(_scenario(), levels=1)


def test_emit_report_csv_columns(tmp_path):
    rep = harness.run_scenario(_scenario())
    out = tmp_path / "r.csv"
    harness.emit_report([rep], "csv", str(out))
    lines = out.read_text().splitlines()
    assert lines[0] == ",".join(harness.CSV_COLUMNS)
    assert lines[1].startswith("t,T3.2,1,")
    assert "beta=0.25;p=2.0;q=4.0" in lines[1]


def test_emit_report_json_roundtrip(tmp_path):
    rep = harness.run_scenario(_scenario())
    out = tmp_path / "r.json"
    harness.emit_report([rep], "json", str(out))
    back = harness.read_reports(str(out))
    assert len(back) == 1
    assert back[0] == rep


def test_emit_report_rejects_bad_format(tmp_path):
    rep = harness.run_scenario(_scenario(kernel="zero"))
    with pytest.raises(InvalidInputError):
        harness.emit_report([rep], "yaml", str(tmp_path / "x"))
    with pytest.raises(InvalidInputError):
        harness.emit_report([], "csv", str(tmp_path / "x"))


def _cli(*args):
    return subprocess.run([sys.executable, "-m", "hauscomm.cli", *args],
                          capture_output=True, text=True)


def test_cli_eval_operator():
    r = _cli("eval", "--kernel", "halfline(0,1)", "--field", "radial",
             "--testfn", "ball-indicator(1)", "--point", "0.5", "--tol", "1e-10")
    assert r.returncode == 0
    assert abs(json.loads(r.stdout)["value"] - math.log(2.0)) < 1e-8


def test_cli_norm_and_constant():
    r = _cli("norm", "--which", "herz", "--testfn", "shell-indicator(0)",
             "--exp", "alpha=0,p=2,q=2", "--k-min", "-3", "--k-max", "3")
    assert r.returncode == 0
    assert abs(json.loads(r.stdout)["value"] - 1.0) < 1e-6
    r = _cli("constant", "--kind", "K2", "--kernel", "annulus(1,2)",
             "--field", "radial", "--exp", "beta=0.25,p=2,q=4")
    assert r.returncode == 0
    exact = 4 * math.sqrt(2) + 8 * 2 ** 0.25 - 12
    assert abs(json.loads(r.stdout)["value"] - exact) < 1e-6


def test_cli_verify_exit_codes(tmp_path):
    cfg = tmp_path / "one.cfg"
    cfg.write_text(GOOD_CFG)
    out = tmp_path / "rep.csv"
    r = _cli("verify", "--config", str(cfg), "--out", str(out), "--format", "csv")
    assert r.returncode == 0, r.stderr
    assert out.read_text().startswith("scenario_id,")
    # A violated hypothesis set must exit nonzero with a diagnostic.
    cfg.write_text(GOOD_CFG.replace("q = 4", "q = 3"))
    r = _cli("verify", "--config", str(cfg))
    assert r.returncode == 1
    assert "violates hypotheses" in r.stderr


def test_cli_study_and_report(tmp_path):
    cfg = tmp_path / "one.cfg"
    cfg.write_text(GOOD_CFG)
    r = _cli("study", "--config", str(cfg), "--scenario", "alpha", "--levels", "2")
    assert r.returncode == 0
    rows = json.loads(r.stdout)
    assert len(rows) == 2 and rows[0]["level"] == 0

    rep_json = tmp_path / "rep.json"
    r = _cli("verify", "--config", str(cfg), "--out", str(rep_json), "--format", "json")
    assert r.returncode == 0
    rep_csv = tmp_path / "rep.csv"
    r = _cli("report", "--input", str(rep_json), "--format", "csv", "--out", str(rep_csv))
    assert r.returncode == 0
    assert rep_csv.read_text().splitlines()[0] == ",".join(harness.CSV_COLUMNS)
