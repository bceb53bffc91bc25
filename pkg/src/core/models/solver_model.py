from typing import Annotated, Dict, List, Literal, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PositiveInt

from src.core.models.prob_model import Pmf, ShannonChannel

MONOTONE_TOLERANCE = 1e-9


class FixedIterations(BaseModel):
    mode: Literal["fixed"] = "fixed"
    count: PositiveInt = 3


class ConvergeTol(BaseModel):
    mode: Literal["converge"] = "converge"
    tol: float = Field(default=1e-10, gt=0, description="L1 change of P(y) that stops iteration")
    max_iter: PositiveInt = 1000


class SolverOptions(BaseModel):
    """Iteration policy for the P(y) fixed point plus the truth floor"""
    mode: Annotated[Union[FixedIterations, ConvergeTol], Field(discriminator="mode")] = Field(
        default_factory=FixedIterations
    )
    truth_floor: float = Field(default=1e-12, gt=0, lt=1)

    @classmethod
    def fixed(cls, iterations: int = 3, truth_floor: float = 1e-12) -> "SolverOptions":
        return cls(mode=FixedIterations(count=iterations), truth_floor=truth_floor)

    @classmethod
    def converging(cls, tol: float = 1e-10, max_iter: int = 1000, truth_floor: float = 1e-12) -> "SolverOptions":
        return cls(mode=ConvergeTol(tol=tol, max_iter=max_iter), truth_floor=truth_floor)


class TiltWorkspace(BaseModel):
    """log m_ij = log[T(theta_j|x_i) / T(theta_j)] with floored truth values"""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    log_m: np.ndarray = Field(description="n_x by n_y matrix of log m_ij (nats)")
    logical_probabilities: np.ndarray = Field(description="T(theta_j) of the floored truth columns")
    truth_floor: float

    @property
    def n_x(self) -> int:
        return self.log_m.shape[0]

    @property
    def n_y(self) -> int:
        return self.log_m.shape[1]


class MessagePoint(BaseModel):
    """Single-message R(G) point: no iteration over P(y)"""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    s: float
    G: float = Field(description="I(X; theta_j) of the tilted posterior, bits")
    R: float = Field(description="KL(posterior || prior), bits")
    posterior: Pmf


class RGPoint(BaseModel):
    """One parametric point of the R(G) function"""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    s: float
    G: float = Field(description="Purposive G: P(a)-weighted G of the tilted goal posteriors, bits")
    R: float = Field(description="P(a)-weighted KL of the tilted goal posteriors against the prior, bits")
    avg_distortion: float = Field(description="P(a)-weighted E[log2 1/T(theta_j|x)] under the tilted goal posteriors, floored truth")
    G_channel: float = Field(description="Semantic mutual information of the solved channel, bits")
    R_channel: float = Field(description="s G_channel - sum_i P(x_i) log lambda_i, bits")
    py: Pmf = Field(description="Marginal over actions/labels")
    channel: ShannonChannel
    posteriors: np.ndarray = Field(description="n_x by n_y matrix; column j is P(x|theta_j, s)")
    iterations_used: int
    converged: bool


class RGCurve(BaseModel):
    """R(G) points ordered by G"""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    points: List[RGPoint]

    def by_s(self) -> List[RGPoint]:
        return sorted(self.points, key=lambda p: p.s)

    def nonnegative_branch(self) -> List[RGPoint]:
        return [p for p in self.points if p.s >= 0]

    def secant_slopes(self) -> List[Dict[str, Optional[float]]]:
        """Slope dR/dG between consecutive s >= 0 points (None where G does not move)"""
        branch = sorted(self.nonnegative_branch(), key=lambda p: p.s)
        report = []
        for lo, hi in zip(branch, branch[1:]):
            dG = hi.G - lo.G
            slope = (hi.R - lo.R) / dG if dG > 0 else None
            report.append({"s_lo": lo.s, "s_hi": hi.s, "slope": slope})
        return report

    def is_monotone(self, tol: float = MONOTONE_TOLERANCE) -> bool:
        """G(s) and R(s) non-decreasing over the s >= 0 branch"""
        branch = sorted(self.nonnegative_branch(), key=lambda p: p.s)
        return all(
            hi.G >= lo.G - tol and hi.R >= lo.R - tol
            for lo, hi in zip(branch, branch[1:])
        )

    def is_convex(self, tol: float = MONOTONE_TOLERANCE) -> bool:
        """Secant slopes non-decreasing in G over the s >= 0 branch"""
        slopes = [entry["slope"] for entry in self.secant_slopes() if entry["slope"] is not None]
        return all(b >= a - tol for a, b in zip(slopes, slopes[1:]))

    def interpolate_R(self, G: float) -> Optional[float]:
        """Linear interpolation of R at G along the s >= 0 branch; None outside its range"""
        branch = sorted(self.nonnegative_branch(), key=lambda p: p.G)
        gs = np.array([p.G for p in branch])
        rs = np.array([p.R for p in branch])
        if gs.size == 0 or G < gs[0] or G > gs[-1]:
            return None
        return float(np.interp(G, gs, rs))
