import math
from typing import Optional, Tuple

import numpy as np
from scipy.special import rel_entr

from src.core.exceptions import (
    InvalidArgumentError,
    UndefinedRatioError,
    UnreachableLabelError,
    UnsatisfiableGoalError,
)
from src.core.models.info_model import InfoDecomposition
from src.core.models.prob_model import Pmf, SemanticChannel, ShannonChannel
from src.core.utils.prob_utils import to_bits


def _column(truth_col, prior: Pmf) -> np.ndarray:
    t = np.asarray(truth_col, dtype=float)
    if t.ndim != 1 or t.size != prior.size:
        raise InvalidArgumentError(f"Truth column of shape {t.shape} does not match prior of size {prior.size}")
    return t


def _check_shapes(prior: Pmf, channel: ShannonChannel, sem: Optional[SemanticChannel] = None):
    if channel.n_x != prior.size:
        raise InvalidArgumentError(f"Channel has {channel.n_x} rows, prior has {prior.size} outcomes")
    if sem is not None and sem.matrix.shape != channel.matrix.shape:
        raise InvalidArgumentError(f"Semantic channel {sem.matrix.shape} does not match channel {channel.matrix.shape}")


def floored(truth, truth_floor: Optional[float]) -> np.ndarray:
    t = np.asarray(truth, dtype=float)
    return t if truth_floor is None else np.maximum(t, truth_floor)


def logical_probability(truth_col, prior: Pmf) -> float:
    """T(theta_j) = sum_i P(x_i) T(theta_j|x_i)"""
    t = _column(truth_col, prior)
    return float(np.clip(prior.weights @ t, 0.0, 1.0))


def semantic_bayes(truth_col, prior: Pmf) -> Pmf:
    """P(x|theta_j) = T(theta_j|x) P(x) / T(theta_j)"""
    t = _column(truth_col, prior)
    T = logical_probability(t, prior)
    if not T > 0:
        raise UnsatisfiableGoalError("Goal has zero logical probability under the prior")
    w = t * prior.weights / T
    return Pmf(weights=w / w.sum(), grid=prior.grid)


def truth_from_likelihood(likelihood: Pmf, prior: Pmf) -> Tuple[np.ndarray, float]:
    """
    Recover the truth function behind a likelihood

    The truth function is scaled so that its maximum over the grid is 1,
    which fixes T(theta) = 1 / max_x [P(x|theta) / P(x)].

    Args:
        likelihood: P(x|theta)
        prior: P(x) on the same grid

    Returns:
        (truth column, logical probability)
    """
    if not likelihood.same_support(prior):
        raise InvalidArgumentError("Likelihood and prior must share a grid")
    lik, p = likelihood.weights, prior.weights
    if np.any((lik > 0) & (p <= 0)):
        raise UndefinedRatioError("Likelihood is positive where the prior is zero")

    ratio = np.divide(lik, p, out=np.zeros_like(lik), where=p > 0)
    peak = ratio.max()
    truth = np.minimum(ratio / peak, 1.0)
    return truth, float(1.0 / peak)


def pointwise_info(truth_col, prior: Pmf, i: int) -> float:
    """I(x_i; theta_j) = log2 [T(theta_j|x_i) / T(theta_j)]; -inf where the truth is 0"""
    t = _column(truth_col, prior)
    if not 0 <= i < t.size:
        raise InvalidArgumentError(f"Index {i} outside grid of size {t.size}")
    T = logical_probability(t, prior)
    if not T > 0:
        raise UnsatisfiableGoalError("Goal has zero logical probability under the prior")
    if t[i] <= 0:
        return -math.inf
    return math.log2(t[i] / T)


def avg_semantic_info(sample: Pmf, truth_col, prior: Pmf, truth_floor: Optional[float] = None) -> float:
    """
    I(X; theta_j) = sum_i sample_i log2 [T(theta_j|x_i) / T(theta_j)]

    Args:
        sample: Sampling distribution (or control result P(x|a_j))
        truth_col: T(theta_j|x) on the prior's grid
        prior: P(x)
        truth_floor: When given, truth values are clamped below it first (T(theta_j) included)

    Returns:
        Bits; -inf when the sample has mass where the truth is 0
    """
    if not sample.same_support(prior):
        raise InvalidArgumentError("Sample and prior must share a grid")
    t = floored(_column(truth_col, prior), truth_floor)
    T = logical_probability(t, prior)
    if not T > 0:
        raise UnsatisfiableGoalError("Goal has zero logical probability under the prior")

    mass = sample.weights > 0
    if np.any(mass & (t <= 0)):
        return -math.inf
    return float(sample.weights[mass] @ np.log2(t[mass] / T))


def truth_from_channel(channel: ShannonChannel, j: int) -> np.ndarray:
    """T*(theta_j|x) = P(y_j|x) / max_x P(y_j|x)"""
    if not 0 <= j < channel.n_y:
        raise InvalidArgumentError(f"Label index {j} outside channel with {channel.n_y} labels")
    column = channel.matrix[:, j]
    peak = column.max()
    if not peak > 0:
        raise UnreachableLabelError(f"Label {j} is never produced by the channel")
    return np.minimum(column / peak, 1.0)


def semantic_mi(prior: Pmf, channel: ShannonChannel, sem: SemanticChannel, truth_floor: Optional[float] = None) -> float:
    """I(X; Y_theta) = sum_ij P(x_i) P(y_j|x_i) log2 [T(theta_j|x_i) / T(theta_j)]"""
    _check_shapes(prior, channel, sem)
    truth = floored(sem.matrix, truth_floor)
    T = prior.weights @ truth
    if np.any(T <= 0):
        raise UnsatisfiableGoalError("Some goal has zero logical probability under the prior")

    joint = prior.weights[:, None] * channel.matrix
    mass = joint > 0
    if np.any(mass & (truth <= 0)):
        return -math.inf
    log_m = np.log2(np.where(mass, truth, 1.0) / T[None, :])
    return float((joint * log_m)[mass].sum())


def shannon_mi(prior: Pmf, channel: ShannonChannel) -> float:
    """I(X; Y) of the joint P(x) P(y|x), bits"""
    _check_shapes(prior, channel)
    joint = prior.weights[:, None] * channel.matrix
    py = prior.weights @ channel.matrix
    return max(0.0, float(to_bits(rel_entr(joint, np.outer(prior.weights, py)).sum())))


def truth_to_distortion(t):
    """d = log 1/t in nats; inf at t = 0"""
    arr = np.asarray(t, dtype=float)
    if np.any(arr < 0) or np.any(arr > 1):
        raise InvalidArgumentError("Truth values must lie in [0, 1]")
    with np.errstate(divide="ignore"):
        d = -np.log(arr)
    return float(d) if d.ndim == 0 else d


def distortion_to_truth(d):
    """t = exp(-d); inverse of truth_to_distortion"""
    arr = np.asarray(d, dtype=float)
    if np.any(arr < 0):
        raise InvalidArgumentError("Distortion must be nonnegative")
    t = np.exp(-arr)
    return float(t) if t.ndim == 0 else t


def decompose_info(prior: Pmf, channel: ShannonChannel, sem: SemanticChannel) -> InfoDecomposition:
    """Split semantic MI into -sum_j P(y_j) log2 T(theta_j) minus the average distortion"""
    _check_shapes(prior, channel, sem)
    truth = sem.matrix
    T = prior.weights @ truth
    if np.any(T <= 0):
        raise UnsatisfiableGoalError("Some goal has zero logical probability under the prior")

    py = prior.weights @ channel.matrix
    used = py > 0
    fuzzy_entropy_term = float(-(py[used] @ np.log2(T[used])))

    joint = prior.weights[:, None] * channel.matrix
    mass = joint > 0
    if np.any(mass & (truth <= 0)):
        avg_distortion = math.inf
    else:
        avg_distortion = float((joint[mass] * -np.log2(truth[mass])).sum())

    return InfoDecomposition(
        fuzzy_entropy_term=fuzzy_entropy_term,
        avg_distortion=avg_distortion,
        semantic_mi=semantic_mi(prior, channel, sem),
    )
