import math
from typing import Iterable, Literal, Optional, Union

import numpy as np
from pydantic import ValidationError
from scipy.special import expit, rel_entr

from src.core.exceptions import (
    DegeneratePriorError,
    InfiniteDivergenceError,
    InvalidArgumentError,
    UnreachableGoalError,
)
from src.core.models.prob_model import Grid, Pmf, SemanticChannel
from src.core.models.spec_model import (
    BellPowerTruth,
    GaussianBellTruth,
    LogisticTruth,
    NormalPrior,
    PriorSpec,
    TabulatedPrior,
    TabulatedTruth,
    TruthSpec,
)

LN2 = math.log(2.0)


def to_bits(nats):
    return nats / LN2


def make_grid(lower: float, upper: float, step: float) -> Grid:
    """
    Build an evenly spaced grid

    Args:
        lower: First point
        upper: Upper bound (last point never exceeds it)
        step: Spacing, must be positive

    Returns:
        Grid
    """
    if not step > 0:
        raise InvalidArgumentError(f"Grid step must be positive, got {step}")
    if not upper > lower:
        raise InvalidArgumentError(f"Grid range is empty: [{lower}, {upper}]")
    try:
        return Grid(lower=lower, upper=upper, step=step)
    except ValidationError as e:
        raise InvalidArgumentError(str(e)) from e


def normalize(weights, grid: Optional[Grid] = None) -> Pmf:
    """Scale nonnegative weights to a Pmf"""
    w = np.asarray(weights, dtype=float)
    total = w.sum()
    if not total > 0:
        raise DegeneratePriorError("Cannot normalize weights with zero total mass")
    return Pmf(weights=w / total, grid=grid)


def uniform_pmf(n: int) -> Pmf:
    if n < 1:
        raise InvalidArgumentError(f"Uniform pmf needs at least one outcome, got {n}")
    return Pmf(weights=np.full(n, 1.0 / n))


def pmf_from_spec(spec: PriorSpec, grid: Grid) -> Pmf:
    """Sample a prior on the grid, truncate to it and renormalize"""
    x = grid.points
    if isinstance(spec, NormalPrior):
        density = np.exp(-((x - spec.mu) ** 2) / (2.0 * spec.sigma ** 2))
    elif isinstance(spec, TabulatedPrior):
        if len(spec.weights) != grid.size:
            raise InvalidArgumentError(f"Tabulated prior has {len(spec.weights)} weights, grid has {grid.size} points")
        density = np.asarray(spec.weights, dtype=float)
    else:
        raise InvalidArgumentError(f"Unsupported prior spec {type(spec).__name__}")

    if not density.sum() > 0:
        raise DegeneratePriorError(f"Prior {spec} has no mass on grid [{grid.lower}, {grid.upper}]")
    return normalize(density, grid)


def truth_from_spec(spec: TruthSpec, grid: Grid) -> np.ndarray:
    """Evaluate a truth function pointwise on the grid; values in [0, 1]"""
    x = grid.points
    if isinstance(spec, LogisticTruth):
        values = expit(spec.k * (x - spec.c))
    elif isinstance(spec, BellPowerTruth):
        # 1 - (1 - e^-d)^p without cancellation near d = 0
        d = (x - spec.c) ** 2 / spec.w
        with np.errstate(divide="ignore"):
            values = -np.expm1(spec.p * np.log1p(-np.exp(-d)))
    elif isinstance(spec, GaussianBellTruth):
        values = np.exp(-((x - spec.c) ** 2) / (2.0 * spec.sigma ** 2))
    elif isinstance(spec, TabulatedTruth):
        if len(spec.values) != grid.size:
            raise InvalidArgumentError(f"Tabulated truth has {len(spec.values)} values, grid has {grid.size} points")
        values = np.asarray(spec.values, dtype=float)
    else:
        raise InvalidArgumentError(f"Unsupported truth spec {type(spec).__name__}")
    return np.clip(values, 0.0, 1.0)


def semantic_channel_from_specs(goals: Iterable[TruthSpec], grid: Grid) -> SemanticChannel:
    columns = [truth_from_spec(goal, grid) for goal in goals]
    for j, column in enumerate(columns):
        if not column.max() > 0:
            raise UnreachableGoalError(f"Goal {j} is false at every grid point")
    return SemanticChannel.from_columns(columns)


def kl_divergence(
    p: Union[Pmf, np.ndarray],
    q: Union[Pmf, np.ndarray],
    on_infinite: Literal["inf", "raise"] = "inf",
) -> float:
    """
    KL(p || q) in bits

    Args:
        p: Pmf (or weight array)
        q: Pmf on the same support
        on_infinite: "inf" returns math.inf when q is zero where p is positive, "raise" raises

    Returns:
        Divergence in bits, >= 0
    """
    if isinstance(p, Pmf) and isinstance(q, Pmf) and not p.same_support(q):
        raise InvalidArgumentError("KL divergence needs distributions on the same grid")
    pw = p.weights if isinstance(p, Pmf) else np.asarray(p, dtype=float)
    qw = q.weights if isinstance(q, Pmf) else np.asarray(q, dtype=float)
    if pw.shape != qw.shape:
        raise InvalidArgumentError(f"Shape mismatch: {pw.shape} vs {qw.shape}")

    if np.any((pw > 0) & (qw <= 0)):
        if on_infinite == "raise":
            raise InfiniteDivergenceError("q is zero where p is positive")
        return math.inf
    return max(0.0, float(to_bits(rel_entr(pw, qw).sum())))
