import pytest
from pydantic import ValidationError

from src.core.exceptions import ConfigError, UnknownScenarioError
from src.core.models.scenario_model import ScenarioConfig
from src.core.models.solver_model import ConvergeTol, FixedIterations
from src.core.models.spec_model import BellPowerTruth, LogisticTruth
from src.experiments.scenarios import (
    apply_overrides,
    dump_scenario,
    get_scenario,
    list_scenarios,
    load_scenario,
    resolve_scenario,
)

MINIMAL = """
name: tiny
grid: {lower: 0, upper: 2, step: 1}
prior: {kind: tabulated, weights: [1, 1, 1]}
goals:
  - {kind: tabulated, values: [1.0, 0.5, 0.0]}
"""


def _write(tmp_path, text, name="scenario.yaml"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def test_builtin_scenarios():
    assert list_scenarios() == ["mortality", "two_goal_c75", "two_goal_c80"]
    mortality = get_scenario("mortality")
    assert mortality.prior.mu == 70 and mortality.prior.sigma == 10
    assert mortality.goals == [LogisticTruth(c=80, k=0.8)]
    assert isinstance(mortality.solver.mode, ConvergeTol)

    two_goal = get_scenario("two_goal_c75")
    assert two_goal.goals[0] == BellPowerTruth(c=20, w=50, p=3)
    assert two_goal.goals[1] == LogisticTruth(c=75, k=0.75)
    assert two_goal.solver.mode == FixedIterations(count=3)
    assert two_goal.warm_start is False
    assert two_goal.s_values == [1, 5, 40]


@pytest.mark.parametrize("name", ["mortality", "two_goal_c75", "two_goal_c80"])
def test_scenario_files_match_builtins(name):
    assert load_scenario(f"config/scenarios/{name}.yaml").model_dump() == get_scenario(name).model_dump()


def test_unknown_scenario():
    with pytest.raises(UnknownScenarioError):
        get_scenario("mortality_c90")
    with pytest.raises(UnknownScenarioError):
        load_scenario("config/scenarios/missing.yaml")


def test_resolve_by_name_or_path(tmp_path):
    assert resolve_scenario("two_goal_c80").name == "two_goal_c80"
    config = resolve_scenario(_write(tmp_path, MINIMAL + "s_values: [1]\n"))
    assert config.name == "tiny"
    assert config.curve_s == [1.0]
    assert config.warm_start is True and config.outputs.curve_csv is None


def test_s_values_required(tmp_path):
    with pytest.raises(ConfigError):
        load_scenario(_write(tmp_path, MINIMAL))


def test_empty_s_values_rejected(tmp_path):
    with pytest.raises(ConfigError):
        load_scenario(_write(tmp_path, MINIMAL + "s_values: []\n"))


@pytest.mark.parametrize(
    "extra",
    [
        "s_values: [1]\ncurve_s_values: []\n",
        "s_values: [1]\noutputs:\n  point_mass_targets: [{goal: 3, x: 1}]\n",
        "s_values: [1]\nsolver: {mode: {mode: fixed, count: 0}}\n",
    ],
)
def test_invalid_scenarios_rejected(tmp_path, extra):
    with pytest.raises(ConfigError):
        load_scenario(_write(tmp_path, MINIMAL + extra))


def test_malformed_yaml_rejected(tmp_path):
    with pytest.raises(ConfigError):
        load_scenario(_write(tmp_path, "name: [unclosed\n"))
    with pytest.raises(ConfigError):
        load_scenario(_write(tmp_path, "- just\n- a list\n", "list.yaml"))


def test_dump_and_reload(tmp_path):
    config = get_scenario("two_goal_c75")
    path = dump_scenario(config, str(tmp_path / "nested" / "copy.yaml"))
    assert load_scenario(path).model_dump() == config.model_dump()


def test_overrides_return_new_config():
    base = get_scenario("mortality")
    changed = apply_overrides(base, grid_step=0.5, s_values=[2, 3], iterations=4)
    assert changed.grid.step == 0.5 and changed.grid.upper == 120
    assert changed.s_values == [2, 3] and changed.curve_s == [2, 3]
    assert changed.solver.mode == FixedIterations(count=4)
    assert changed.solver.truth_floor == base.solver.truth_floor
    assert base.grid.step == 1 and len(base.curve_s) == 15
    assert apply_overrides(base) is base


@pytest.mark.parametrize("overrides", [{"grid_step": -1}, {"s_values": []}, {"iterations": 0}, {"grid_step": 500}])
def test_invalid_overrides(overrides):
    with pytest.raises(ConfigError):
        apply_overrides(get_scenario("two_goal_c75"), **overrides)


def test_config_requires_a_goal():
    with pytest.raises(ValidationError):
        ScenarioConfig(name="x", grid={"lower": 0, "upper": 1, "step": 1}, prior={"kind": "normal", "mu": 0, "sigma": 1}, goals=[], s_values=[1])
