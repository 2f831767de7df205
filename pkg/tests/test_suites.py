import json

import pytest

from pathflip import suites
from pathflip.suites import SUITES, SuiteReport, run_suite


def test_empty_report_is_not_a_pass():
    assert not SuiteReport("x").ok


@pytest.mark.parametrize("name", sorted(SUITES))
def test_every_suite_checks_something(name):
    lo, hi = (6, 6) if name in ("fig2", "two-layer") else (4, 5)
    rep = run_suite(name, (lo, hi), samples=1, seed=3)
    assert rep.checks and rep.ok, rep.lines()
    assert json.loads(json.dumps(rep.to_json()))["suite"] == rep.suite


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope", (3, 4))


def test_connectivity_violation_writes_artifact(tmp_path, monkeypatch):
    monkeypatch.setattr(suites, "components", lambda G: [[0], [1]])
    rep = run_suite("connectivity", (5, 5), samples=2, seed=0, artifact_dir=str(tmp_path))
    assert not rep.ok
    files = sorted(tmp_path.iterdir())
    assert len(files) == 2
    data = json.loads(files[0].read_text())
    assert data["components"] == 2 and len(data["points"]) == 5


def test_planner_fault_is_recorded_not_raised(monkeypatch):
    from pathflip.planners.builder import PlannerDefect

    def broken(P, s=None):
        raise PlannerDefect("forced")

    monkeypatch.setattr(suites, "k_property_step", broken)
    rep = run_suite("two-layer", (6, 6), samples=1, seed=0)
    assert not rep.ok
    assert any(c["check"] == "k-property" for c in rep.counterexamples)


def test_line_format():
    rep = SuiteReport("s")
    rep.add("n=3", True, "fine")
    rep.add("n=4", False, "broken")
    assert rep.lines() == ["PASS  n=3: fine", "FAIL  n=4: broken"]
