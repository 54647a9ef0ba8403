import csv
import io
import json

import pytest

from braidexp import cli
from braidexp.report import CheckReport


def _run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(argv, out, err)
    return code, out.getvalue(), err.getvalue()


def test_exp_check_json():
    code, out, _ = _run(["exp-check", "--window", "2048", "--terms", "40", "--probe", "16", "--format", "json"])
    assert code == 0
    doc = json.loads(out)
    assert doc["run_config"]["subcommand"] == "exp-check"
    assert doc["run_config"]["params"] == {"window": 2048, "terms": 40, "probe": 16}
    assert doc["reports"] and all(r["passed"] for r in doc["reports"])
    for r in doc["reports"]:
        assert {"computed", "target", "bound"} <= set(r)


def test_simplex_csv():
    code, out, _ = _run(["simplex", "--n", "6", "--format", "csv"])
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == ["name", "computed", "target", "bound", "passed", "exact"]
    assert any(r["computed"] == "0.001388888888888889" and r["exact"] == "1/720" for r in rows)


@pytest.mark.parametrize(
    "argv",
    [
        ["exp-check", "--window", "-5"],
        ["nonsense"],
        [],
        ["tau", "--bogus", "1"],
        ["abel-sum", "--x", "nan"],
        ["vassiliev-degree", "--coeffs", "1-1"],
    ],
)
def test_usage_errors(argv):
    code, out, err = _run(argv)
    assert code == 2
    assert out == ""
    assert err


def test_domain_errors_are_usage_errors():
    assert _run(["abel-sum", "--x", "1.5"])[0] == 2
    assert _run(["p3-probe", "--s", "0.5"])[0] == 2


def test_exit_one_when_a_check_fails(monkeypatch):
    bad = CheckReport.check("forced", 1.0, 2.0, 0.0, 0.0)
    monkeypatch.setitem(cli.COMMANDS, "density", lambda args, cfg: [bad])
    code, out, err = _run(["density", "--n", "3"])
    assert code == 1
    assert json.loads(out)["reports"][0]["passed"] is False
    assert "forced" in err


def test_report_only_exits_zero():
    code, out, _ = _run(["p3-probe", "--s", "0.6", "--L", "5"])
    assert code == 0
    (r,) = json.loads(out)["reports"]
    assert r["passed"] is None and r["table"]


@pytest.mark.parametrize(
    "argv",
    [
        ["tau", "--window", "64"],
        ["parseval", "--grid", "1025", "--window", "200"],
        ["tau-power", "--m", "3", "--window", "1000"],
        ["b-slice", "--m", "2", "--k", "3"],
        ["vassiliev-degree", "--coeffs", "3:1,2:-3,1:3,0:-1"],
        ["density", "--n", "1000"],
        ["abel-sum", "--x", "0.999"],
        ["p3-probe", "--profile", "delta-x", "--L", "4"],
        ["simplex", "--n", "3", "--mc-samples", "20000", "--seed", "7"],
    ],
)
def test_subcommands_run_and_are_reproducible(argv):
    first = _run(argv + ["--format", "csv"])
    second = _run(argv + ["--format", "csv"])
    assert first[0] in (0, 1)
    assert first[1] == second[1]
    assert first[1].count("\n") >= 2


def test_vassiliev_degree_values():
    _, out, _ = _run(["vassiliev-degree", "--coeffs", "3:1,2:-3,1:3,0:-1"])
    (r,) = json.loads(out)["reports"]
    assert r["computed"] == 3


def test_seed_changes_monte_carlo_only():
    a = _run(["simplex", "--n", "3", "--mc-samples", "20000", "--seed", "1"])[1]
    b = _run(["simplex", "--n", "3", "--mc-samples", "20000", "--seed", "2"])[1]
    assert a != b
