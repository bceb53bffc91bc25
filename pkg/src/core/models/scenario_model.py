from datetime import datetime, timezone
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, NonNegativeInt, model_validator

from src.core.models.control_model import GaussianBeta
from src.core.models.report_model import TableCell
from src.core.models.prob_model import Grid
from src.core.models.solver_model import SolverOptions
from src.core.models.spec_model import PriorSpec, TruthSpec


class PointMassTarget(BaseModel):
    goal: NonNegativeInt = Field(default=0, description="Index of the goal whose truth function scores the target")
    x: float = Field(description="Requested target in domain units")


class OutputsConfig(BaseModel):
    curve_csv: Optional[str] = Field(default=None, description="Curve CSV path, relative to the output directory")
    summary_json: Optional[str] = Field(default=None, description="Summary JSON path, relative to the output directory")
    surrogate: bool = False
    point_mass_targets: List[PointMassTarget] = Field(default_factory=list)
    point_mass_step: Optional[float] = Field(
        default=None, gt=0, description="Finer grid step for point-mass targets; None uses the scenario grid"
    )


class ScenarioConfig(BaseModel):
    """One experiment setup: grid, prior, goals and the s values to solve"""
    name: str
    description: str = ""
    grid: Grid
    prior: PriorSpec
    goals: List[TruthSpec] = Field(min_length=1)
    s_values: List[float] = Field(min_length=1)
    curve_s_values: Optional[List[float]] = Field(default=None, description="s values for the curve; defaults to s_values")
    solver: SolverOptions = Field(default_factory=SolverOptions)
    warm_start: bool = True
    parallel: bool = False
    outputs: OutputsConfig = Field(default_factory=OutputsConfig)

    @model_validator(mode="after")
    def _check_references(self):
        if self.curve_s_values is not None and not self.curve_s_values:
            raise ValueError("curve_s_values must not be empty when given")
        for target in self.outputs.point_mass_targets:
            if target.goal >= len(self.goals):
                raise ValueError(f"Point-mass target refers to goal {target.goal}, scenario has {len(self.goals)}")
        return self

    @property
    def curve_s(self) -> List[float]:
        return list(self.curve_s_values) if self.curve_s_values is not None else list(self.s_values)


class RunRow(BaseModel):
    s: float
    G_bits: float
    R_bits: float
    efficiency: Optional[float] = None
    G_channel_bits: Optional[float] = Field(default=None, description="Channel-level G; None for a single goal")
    R_channel_bits: Optional[float] = Field(default=None, description="Channel-level R; None for a single goal")
    avg_distortion_bits: float = Field(description="Average distortion of the control results, log2 1/T")
    pa: List[float]
    converged: bool
    iterations: int


class SurrogateRow(BaseModel):
    s: float
    G1_bits: float
    R1_bits: float
    efficiency1: Optional[float] = None
    betas: List[GaussianBeta]
    R_exact_at_G1: Optional[float] = Field(default=None, description="Exact curve interpolated at G1; None outside its range")
    dominated: Optional[bool] = Field(default=None, description="R(G1) <= R1 within 1e-6")


class PointMassRow(BaseModel):
    goal: int
    x_requested: float
    x_target: float
    step: float
    G_bits: float
    R_bits: float
    efficiency: Optional[float] = None


class RunMetadata(BaseModel):
    scenario: str
    grid: Grid
    version: str
    timestamp: datetime = Field(default_factory=lambda: datetime.now(timezone.utc))


class RunRecord(BaseModel):
    """Serializable result of one scenario run"""
    metadata: RunMetadata
    rows: List[RunRow]
    surrogate: List[SurrogateRow] = Field(default_factory=list)
    point_mass: List[PointMassRow] = Field(default_factory=list)
    curve: Dict[str, Any] = Field(default_factory=dict, description="Curve diagnostics: monotone, convex, secant slopes")
    verdicts: List[TableCell] = Field(default_factory=list, description="Rows judged against their published values (built-in scenarios)")

    @model_validator(mode="after")
    def _check_sorted(self):
        s_values = [row.s for row in self.rows]
        if s_values != sorted(s_values):
            raise ValueError("Run rows must be sorted by s")
        return self


class ScenarioOverrides(BaseModel):
    """Optional run-time overrides of a scenario"""
    grid_step: Optional[float] = Field(default=None, gt=0)
    s_values: Optional[List[float]] = Field(default=None, min_length=1)
    iterations: Optional[int] = Field(default=None, ge=1)
