import os
import logging
from typing import Dict, List, Optional, Sequence

import yaml
from pydantic import ValidationError

from src.core.exceptions import ConfigError, OutputError, UnknownScenarioError
from src.core.models.prob_model import Grid
from src.core.models.scenario_model import OutputsConfig, PointMassTarget, ScenarioConfig
from src.core.models.solver_model import FixedIterations, SolverOptions
from src.core.models.spec_model import BellPowerTruth, LogisticTruth, NormalPrior

# Configure logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger("ScenarioRegistry")

MORTALITY_CURVE_S = [0, 0.25, 0.5, 0.75, 1, 1.5, 2, 3, 5, 7.5, 10, 15, 20, 30, 40]
TWO_GOAL_CURVE_S = [0, 0.5, 1, 2, 5, 10, 20, 40]


def mortality_scenario() -> ScenarioConfig:
    """Single goal: keep the age of death above about 80"""
    return ScenarioConfig(
        name="mortality",
        description="Single-goal range control: prior N(70, 10), goal 1/(1+exp(-0.8(x-80)))",
        grid=Grid(lower=0, upper=120, step=1),
        prior=NormalPrior(mu=70, sigma=10),
        goals=[LogisticTruth(c=80, k=0.8)],
        s_values=[1, 20, 40],
        curve_s_values=MORTALITY_CURVE_S,
        solver=SolverOptions.converging(),
        outputs=OutputsConfig(
            curve_csv="mortality_curve.csv",
            summary_json="mortality_summary.json",
            surrogate=True,
            point_mass_targets=[PointMassTarget(goal=0, x=80)],
            point_mass_step=0.25,
        ),
    )


def two_goal_scenario(c: float) -> ScenarioConfig:
    """Two goals: a bell around 20 and a logistic above c"""
    tag = f"{c:g}"
    return ScenarioConfig(
        name=f"two_goal_c{tag}",
        description=f"Two-goal range control: prior N(50, 15), goals 1-[1-exp(-(x-20)^2/50)]^3 and 1/(1+exp(-0.75(x-{tag})))",
        grid=Grid(lower=0, upper=110, step=0.5),
        prior=NormalPrior(mu=50, sigma=15),
        goals=[BellPowerTruth(c=20, w=50, p=3), LogisticTruth(c=c, k=0.75)],
        s_values=[1, 5, 40],
        curve_s_values=TWO_GOAL_CURVE_S,
        solver=SolverOptions(mode=FixedIterations(count=3)),
        warm_start=False,
        outputs=OutputsConfig(
            curve_csv=f"two_goal_c{tag}_curve.csv",
            summary_json=f"two_goal_c{tag}_summary.json",
            surrogate=True,
        ),
    )


BUILTIN_SCENARIOS = {
    "mortality": mortality_scenario,
    "two_goal_c75": lambda: two_goal_scenario(75),
    "two_goal_c80": lambda: two_goal_scenario(80),
}


def list_scenarios() -> List[str]:
    return sorted(BUILTIN_SCENARIOS)


def get_scenario(name: str) -> ScenarioConfig:
    if name not in BUILTIN_SCENARIOS:
        raise UnknownScenarioError(f"Unknown scenario '{name}', expected one of {list_scenarios()}")
    return BUILTIN_SCENARIOS[name]()


def load_scenario(path: str) -> ScenarioConfig:
    """
    Load a scenario from a YAML file

    Args:
        path: Scenario file path

    Returns:
        Validated ScenarioConfig
    """
    if not os.path.exists(path):
        raise UnknownScenarioError(f"Scenario file not found: {path}")
    try:
        with open(path, "r", encoding="utf-8") as f:
            raw = yaml.safe_load(f)
    except (OSError, yaml.YAMLError) as e:
        raise ConfigError(f"Cannot read scenario {path}: {e}") from e
    if not isinstance(raw, dict):
        raise ConfigError(f"Scenario {path} must be a mapping, got {type(raw).__name__}")
    try:
        return ScenarioConfig(**raw)
    except ValidationError as e:
        raise ConfigError(f"Invalid scenario {path}: {e}") from e


def resolve_scenario(ref: str) -> ScenarioConfig:
    """Built-in name or path to a YAML file"""
    if ref in BUILTIN_SCENARIOS:
        return get_scenario(ref)
    return load_scenario(ref)


def dump_scenario(config: ScenarioConfig, path: str) -> str:
    try:
        os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            yaml.safe_dump(config.model_dump(mode="json"), f, sort_keys=False)
    except OSError as e:
        raise OutputError(f"Cannot write scenario to {path}: {e}") from e
    return path


def apply_overrides(
    config: ScenarioConfig,
    grid_step: Optional[float] = None,
    s_values: Optional[Sequence[float]] = None,
    iterations: Optional[int] = None,
) -> ScenarioConfig:
    """New validated config with command-line overrides; config itself is untouched"""
    update: Dict = {}
    if grid_step is not None:
        update["grid"] = {**config.grid.model_dump(), "step": grid_step}
    if s_values is not None:
        update["s_values"] = list(s_values)
        update["curve_s_values"] = list(s_values)
    if iterations is not None:
        update["solver"] = {**config.solver.model_dump(), "mode": {"mode": "fixed", "count": iterations}}
    if not update:
        return config
    try:
        return ScenarioConfig.model_validate({**config.model_dump(), **update})
    except ValidationError as e:
        raise ConfigError(f"Invalid overrides for scenario {config.name}: {e}") from e
