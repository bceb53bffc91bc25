import math

from pydantic import BaseModel, Field, model_validator

from src.core.models.spec_model import TruthSpec

IDENTITY_TOLERANCE = 1e-9


class InfoDecomposition(BaseModel):
    """Semantic mutual information split into I_max and average distortion (bits)"""
    fuzzy_entropy_term: float = Field(description="-sum_j P(y_j) log T(theta_j), i.e. I_max = H(Y_theta)")
    avg_distortion: float = Field(description="E[log 1/T(theta_j|x)] under the joint P(x, y)")
    semantic_mi: float = Field(description="I(X; Y_theta)")

    @model_validator(mode="after")
    def _check_identity(self):
        values = (self.fuzzy_entropy_term, self.avg_distortion, self.semantic_mi)
        if all(math.isfinite(v) for v in values):
            residual = self.semantic_mi - (self.fuzzy_entropy_term - self.avg_distortion)
            if abs(residual) > IDENTITY_TOLERANCE:
                raise ValueError(f"Decomposition identity violated by {residual:.3e} bits")
        return self


class TruthFit(BaseModel):
    spec: TruthSpec
    objective: float = Field(description="Achieved sum_i sample_i log[T(x_i)/T(theta)] in bits")
    evaluations: int = Field(description="Number of candidate parameter sets scored")
