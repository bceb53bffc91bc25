from typing import Optional

from fastapi import APIRouter, HTTPException

from src.core.exceptions import ConfigError, InvalidArgumentError, NumericError, UnknownScenarioError
from src.core.models.scenario_model import ScenarioOverrides
from src.experiments.runner import ScenarioRunner
from src.experiments.scenarios import BUILTIN_SCENARIOS, apply_overrides, get_scenario, list_scenarios

router = APIRouter()
runner = ScenarioRunner()


@router.get("")
async def get_scenarios():
    """
    List built-in scenarios
    """
    return [{"name": name, "description": BUILTIN_SCENARIOS[name]().description} for name in list_scenarios()]


@router.get("/{name}")
async def get_scenario_config(name: str):
    try:
        return get_scenario(name).model_dump(mode="json")
    except UnknownScenarioError as e:
        raise HTTPException(status_code=404, detail=str(e))


@router.post("/{name}/run")
def run_scenario(name: str, overrides: Optional[ScenarioOverrides] = None):
    """
    Run a built-in scenario and return its RunRecord (no files are written)
    """
    overrides = overrides or ScenarioOverrides()
    try:
        config = apply_overrides(
            get_scenario(name),
            grid_step=overrides.grid_step,
            s_values=overrides.s_values,
            iterations=overrides.iterations,
        )
        record = runner.run_scenario(config, write_outputs=False)
        return record.model_dump(mode="json")
    except UnknownScenarioError as e:
        raise HTTPException(status_code=404, detail=str(e))
    except (ConfigError, InvalidArgumentError) as e:
        raise HTTPException(status_code=422, detail=str(e))
    except NumericError as e:
        raise HTTPException(status_code=409, detail=str(e))
