import math
from typing import Optional, Sequence

from src.core.exceptions import InvalidArgumentError
from src.core.models.prob_model import Pmf, SemanticChannel
from src.core.utils.prob_utils import kl_divergence
from src.semantics.semantic_info import avg_semantic_info


def purposive_info(result: Pmf, truth_col, prior: Pmf, truth_floor: Optional[float] = None) -> float:
    """
    Purposive information of a control result, in bits

    Same measure as the average semantic information, with the control
    result P(x|a_j) taking the place of the sampling distribution.
    """
    return avg_semantic_info(result, truth_col, prior, truth_floor=truth_floor)


def _check_plan(posteriors: Sequence[Pmf], pa: Pmf, sem: SemanticChannel):
    if not len(posteriors) == pa.size == sem.n_y:
        raise InvalidArgumentError(
            f"Plan has {len(posteriors)} posteriors and {pa.size} action weights for {sem.n_y} goals"
        )


def multi_goal_purposive(
    posteriors: Sequence[Pmf],
    pa: Pmf,
    sem: SemanticChannel,
    prior: Pmf,
    truth_floor: Optional[float] = None,
) -> float:
    """sum_j P(a_j) purposive_info(P(x|a_j), T(theta_j|x)); actions with P(a_j) = 0 are skipped"""
    _check_plan(posteriors, pa, sem)
    total = 0.0
    for j, (posterior, weight) in enumerate(zip(posteriors, pa.weights)):
        if weight > 0:
            total += weight * purposive_info(posterior, sem.column(j), prior, truth_floor)
    return total


def mixture_rate(posteriors: Sequence[Pmf], pa: Pmf, prior: Pmf) -> float:
    """I(X;A) = sum_j P(a_j) KL(P(x|a_j) || P(x)) against the fixed prior"""
    if len(posteriors) != pa.size:
        raise InvalidArgumentError(f"{len(posteriors)} posteriors for {pa.size} actions")
    total = 0.0
    for posterior, weight in zip(posteriors, pa.weights):
        if weight > 0:
            total += weight * kl_divergence(posterior, prior)
    return total


def imm_objective(
    prior: Pmf,
    pa: Pmf,
    posteriors: Sequence[Pmf],
    sem: SemanticChannel,
    s: float,
    truth_floor: Optional[float] = None,
) -> float:
    """f = I(X;A) - s I(X;A/theta), in bits"""
    _check_plan(posteriors, pa, sem)
    rate = mixture_rate(posteriors, pa, prior)
    if s == 0:
        return rate
    purposive = multi_goal_purposive(posteriors, pa, sem, prior, truth_floor)
    if math.isinf(rate) and math.isinf(purposive):
        return math.inf
    return rate - s * purposive
