from typing import Annotated, List, Literal, Union

from pydantic import BaseModel, Field, PositiveInt, field_validator


class NormalPrior(BaseModel):
    """Normal density sampled on the grid, truncated and renormalized"""
    kind: Literal["normal"] = "normal"
    mu: float = Field(description="Mean in domain units")
    sigma: float = Field(gt=0, description="Standard deviation in domain units")


class TabulatedPrior(BaseModel):
    """Explicit weights, one per grid point, normalized on use"""
    kind: Literal["tabulated"] = "tabulated"
    weights: List[float]

    @field_validator("weights")
    @classmethod
    def _check_weights(cls, value):
        if any(w < 0 for w in value):
            raise ValueError("Tabulated prior weights must be nonnegative")
        if sum(value) <= 0:
            raise ValueError("Tabulated prior needs positive total mass")
        return value


PriorSpec = Annotated[Union[NormalPrior, TabulatedPrior], Field(discriminator="kind")]


class LogisticTruth(BaseModel):
    """T(x) = 1 / (1 + exp(-k (x - c)))"""
    kind: Literal["logistic"] = "logistic"
    c: float
    k: float = Field(gt=0)


class BellPowerTruth(BaseModel):
    """T(x) = 1 - [1 - exp(-(x - c)^2 / w)]^p"""
    kind: Literal["bell_power"] = "bell_power"
    c: float
    w: float = Field(gt=0)
    p: PositiveInt = 1


class GaussianBellTruth(BaseModel):
    """T(x) = exp(-(x - c)^2 / (2 sigma^2)), i.e. exp(-d) for quadratic distortion"""
    kind: Literal["gaussian_bell"] = "gaussian_bell"
    c: float
    sigma: float = Field(gt=0)


class TabulatedTruth(BaseModel):
    kind: Literal["tabulated"] = "tabulated"
    values: List[float]

    @field_validator("values")
    @classmethod
    def _check_values(cls, value):
        if any(v < 0 or v > 1 for v in value):
            raise ValueError("Tabulated truth values must lie in [0, 1]")
        return value


TruthSpec = Annotated[
    Union[LogisticTruth, BellPowerTruth, GaussianBellTruth, TabulatedTruth],
    Field(discriminator="kind"),
]

# parameter names searched by truth-function fitting, per family
TRUTH_FAMILY_PARAMS = {
    "logistic": ("c", "k"),
    "bell_power": ("c", "w", "p"),
    "gaussian_bell": ("c", "sigma"),
}

TRUTH_FAMILY_MODELS = {
    "logistic": LogisticTruth,
    "bell_power": BellPowerTruth,
    "gaussian_bell": GaussianBellTruth,
}
