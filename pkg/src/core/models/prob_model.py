import math
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

SUM_TOLERANCE = 1e-9


def _frozen_array(value, ndim: int) -> np.ndarray:
    arr = np.array(value, dtype=float)
    if arr.ndim != ndim:
        raise ValueError(f"Expected a {ndim}-D array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("Array contains non-finite entries")
    arr.flags.writeable = False
    return arr


class Grid(BaseModel):
    """Evenly spaced discretization of the outcome variable x"""
    model_config = ConfigDict(frozen=True)

    lower: float = Field(description="First grid point (domain units, e.g. years of age)")
    upper: float = Field(description="Upper bound; the last point never exceeds it")
    step: float = Field(gt=0, description="Spacing between consecutive points")

    @model_validator(mode="after")
    def _check_range(self):
        if not self.upper > self.lower:
            raise ValueError(f"Grid upper ({self.upper}) must exceed lower ({self.lower})")
        if self.size < 2:
            raise ValueError("Grid must contain at least 2 points")
        return self

    @property
    def size(self) -> int:
        return int(math.floor((self.upper - self.lower) / self.step + 1e-9)) + 1

    @property
    def points(self) -> np.ndarray:
        return np.minimum(self.lower + self.step * np.arange(self.size), self.upper)

    def index_of(self, x: float) -> int:
        """Index of the grid point nearest to x (lowest index on ties)"""
        return int(np.argmin(np.abs(self.points - x)))


class Pmf(BaseModel):
    """Probability mass function over grid points or over actions"""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    weights: np.ndarray = Field(description="One nonnegative weight per outcome, summing to 1")
    grid: Optional[Grid] = Field(default=None, description="Grid the weights live on; None for action distributions")

    @field_validator("weights", mode="before")
    @classmethod
    def _as_array(cls, value):
        return _frozen_array(value, ndim=1)

    @model_validator(mode="after")
    def _check_mass(self):
        w = self.weights
        if w.size == 0:
            raise ValueError("Pmf needs at least one outcome")
        if self.grid is not None and w.size != self.grid.size:
            raise ValueError(f"Pmf has {w.size} weights but grid has {self.grid.size} points")
        if np.any(w < 0):
            raise ValueError("Pmf weights must be nonnegative")
        if abs(float(w.sum()) - 1.0) > SUM_TOLERANCE:
            raise ValueError(f"Pmf weights sum to {w.sum()!r}, not 1")
        return self

    @property
    def size(self) -> int:
        return int(self.weights.size)

    def same_support(self, other: "Pmf") -> bool:
        if self.size != other.size:
            return False
        if self.grid is not None and other.grid is not None:
            return self.grid == other.grid
        return True

    def mean(self) -> float:
        return float(self.weights @ self.grid.points)

    def variance(self) -> float:
        """Population second central moment"""
        x = self.grid.points
        return float(self.weights @ (x - self.mean()) ** 2)


class ShannonChannel(BaseModel):
    """Row-stochastic matrix; row i is P(y|x_i)"""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    matrix: np.ndarray

    @field_validator("matrix", mode="before")
    @classmethod
    def _as_array(cls, value):
        return _frozen_array(value, ndim=2)

    @model_validator(mode="after")
    def _check_rows(self):
        if np.any(self.matrix < 0):
            raise ValueError("Channel entries must be nonnegative")
        row_sums = self.matrix.sum(axis=1)
        if np.any(np.abs(row_sums - 1.0) > SUM_TOLERANCE):
            raise ValueError("Every channel row must sum to 1")
        return self

    @property
    def n_x(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_y(self) -> int:
        return self.matrix.shape[1]


class SemanticChannel(BaseModel):
    """Truth-value matrix; column j is the membership function T(theta_j|x)"""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    matrix: np.ndarray

    @field_validator("matrix", mode="before")
    @classmethod
    def _as_array(cls, value):
        return _frozen_array(value, ndim=2)

    @model_validator(mode="after")
    def _check_truth(self):
        if np.any(self.matrix < 0) or np.any(self.matrix > 1):
            raise ValueError("Truth values must lie in [0, 1]")
        if np.any(self.matrix.max(axis=0) <= 0):
            raise ValueError("Every truth column needs a positive entry")
        return self

    @classmethod
    def from_columns(cls, columns) -> "SemanticChannel":
        return cls(matrix=np.column_stack([np.asarray(c, dtype=float) for c in columns]))

    @property
    def n_x(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_y(self) -> int:
        return self.matrix.shape[1]

    def column(self, j: int) -> np.ndarray:
        return self.matrix[:, j]
