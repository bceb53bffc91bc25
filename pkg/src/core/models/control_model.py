import math
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.core.models.prob_model import Pmf

GIBBS_TOLERANCE = 1e-9


class ControlPlan(BaseModel):
    """Optimized range-control result for one s"""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    s: float
    pa: Pmf = Field(description="Iterated action marginal P(a)")
    posteriors: List[Pmf] = Field(description="Realized control results P(x|a_j) = P(x|theta_j, s)")
    channel_posteriors: List[Pmf] = Field(description="Bayes inversion of the solved channel against the prior")
    channel_pa: Pmf = Field(description="Output marginal of the solved channel; mixes channel_posteriors back to the prior")
    G: float = Field(description="Purposive information, bits")
    R: float = Field(description="I(X;A) against the fixed prior, bits")
    efficiency: Optional[float] = Field(default=None, description="G/R; None when R is 0")
    iterations_used: int = 0
    converged: bool = False

    @model_validator(mode="after")
    def _check_gibbs(self):
        if math.isfinite(self.G) and math.isfinite(self.R) and self.R < self.G - GIBBS_TOLERANCE:
            raise ValueError(f"Purposive information {self.G} exceeds rate {self.R}")
        return self


class GaussianBeta(BaseModel):
    mu: float
    sigma: float = Field(gt=0)


class GaussianFit(BaseModel):
    """Moment-matched normal surrogate of a posterior"""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    mu: float
    sigma: float = Field(gt=0)
    surrogate: Pmf

    @property
    def beta(self) -> GaussianBeta:
        return GaussianBeta(mu=self.mu, sigma=self.sigma)


class SurrogatePlan(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    betas: List[GaussianBeta]
    surrogate_posteriors: List[Pmf]
    G1: float = Field(description="Purposive information of the surrogates, bits")
    R1: float = Field(description="P(a)-weighted KL of the surrogates against the prior, bits")
    efficiency1: Optional[float] = None


class PointMassPlan(BaseModel):
    """All control mass placed on a single grid point"""
    x_target: float = Field(description="Grid point actually used (nearest to the request)")
    index: int
    G: float = Field(description="Pointwise G measure at the target, bits")
    R: float = Field(description="log2 1/P(x_target), bits; inf when the prior is 0 there")
    efficiency: Optional[float] = None
