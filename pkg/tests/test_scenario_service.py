import pytest

from stationary_lab.errors import ConfigError, UnknownScenarioError
from stationary_lab.models.dt_scenario_config import ScenarioConfig
from stationary_lab.services import scenario_service


def _run(name, **fields):
    return scenario_service.run_scenario(ScenarioConfig(name=name, **fields))


@pytest.mark.parametrize("name", sorted(scenario_service.SCENARIOS))
def test_every_scenario_passes(name):
    report = _run(name)
    assert report.passed, [check.to_dict() for check in report.failures]
    assert report.environment["seed"] == 0
    assert report.anchors
    for check in report.checks:
        assert check.anchor, check.check_id
    assert all(row["anchor"] for row in report.to_dict()["checks"])


def test_unknown_scenario():
    with pytest.raises(UnknownScenarioError):
        _run("no-such-scenario")


def test_listing_matches_registry():
    names = [row["name"] for row in scenario_service.list_scenarios()]
    assert set(names) == set(scenario_service.SCENARIOS)


def test_ftc_divergence_ratio():
    report = _run("ftc-divergence", radii=[2.0, 4.0, 8.0, 16.0])
    ratio = next(check for check in report.checks if check.check_id == "ratio")
    assert ratio.passed
    assert ratio.measured > 10


def test_ber3_with_other_constant():
    report = _run("ber3", params={"C": 9.0, "eps": 0.05, "m": 4})
    assert report.passed
    spread = next(check for check in report.checks if check.check_id == "spread")
    assert 0 < spread.measured < 0.05


def test_zero_tolerance_fails_check():
    report = _run("flat-plane", tolerances={"w-constant": 0.0})
    assert not report.passed


def test_report_is_deterministic():
    first = _run("isotropy", seed=7).to_dict()
    second = _run("isotropy", seed=7).to_dict()
    assert first == second


def test_scenario_default_data():
    data = scenario_service.scenario_data(ScenarioConfig(name="t1-case-iii"))
    assert (data.a, data.b, data.beta.source) == (1.0, 1.0, "z")
    ber3 = scenario_service.scenario_data(ScenarioConfig(name="ber3", params={"C": 9.0}))
    assert ber3.m == 3
    with pytest.raises(ConfigError):
        scenario_service.scenario_data(ScenarioConfig(name="isotropy"))


def test_check_anchor_overrides_report_anchor():
    report = _run("t1-case-iii")
    anchors = {check.check_id: check.anchor for check in report.checks}
    assert anchors["classification"] == "trichotomy: oscillating case"
    assert anchors["ber1"] == "W on both sides of 1"
    assert "W formula" in report.anchors
