import logging
import math
from typing import Optional

import numpy as np

from src.core.exceptions import InvalidArgumentError, UnreachableLabelError
from src.core.models.control_model import ControlPlan, PointMassPlan
from src.core.models.prob_model import Pmf, SemanticChannel
from src.core.models.solver_model import RGPoint, SolverOptions
from src.rate_fidelity.solver import efficiency_of, solve_point
from src.rate_fidelity.tilt import marginal_update
from src.semantics.semantic_info import pointwise_info

# Configure logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger("ControlOptimizer")


def plan_from_point(prior: Pmf, point: RGPoint) -> ControlPlan:
    """Turn a solved R(G) point into control results for every action"""
    posteriors = [
        Pmf(weights=point.posteriors[:, j], grid=prior.grid) for j in range(point.posteriors.shape[1])
    ]

    channel_pa = marginal_update(prior, point.channel)
    channel_posteriors = []
    for j in range(point.channel.n_y):
        if not channel_pa.weights[j] > 0:
            raise UnreachableLabelError(f"Action {j} receives no mass from the solved channel at s={point.s}")
        joint = prior.weights * point.channel.matrix[:, j]
        channel_posteriors.append(Pmf(weights=joint / joint.sum(), grid=prior.grid))

    return ControlPlan(
        s=point.s,
        pa=point.py,
        posteriors=posteriors,
        channel_posteriors=channel_posteriors,
        channel_pa=channel_pa,
        G=point.G,
        R=point.R,
        efficiency=efficiency_of(point.G, point.R),
        iterations_used=point.iterations_used,
        converged=point.converged,
    )


def optimize_control(
    prior: Pmf,
    sem: SemanticChannel,
    s: float,
    opts: Optional[SolverOptions] = None,
    init_py: Optional[Pmf] = None,
) -> ControlPlan:
    """
    Optimize range control toward the goals in sem

    Args:
        prior: P(x) without control
        sem: One truth function per goal
        s: Tradeoff between purposive information and rate
        opts: Solver options; three fixed iterations from a uniform P(a) by default
        init_py: Starting P(a)

    Returns:
        ControlPlan
    """
    point = solve_point(prior, sem, s, init_py, opts)
    plan = plan_from_point(prior, point)
    logger.info(
        f"Control plan at s={s}: P(a)={np.round(plan.pa.weights, 4).tolist()}, "
        f"G={plan.G:.4f} R={plan.R:.4f} bits"
    )
    return plan


def point_mass_plan(prior: Pmf, truth_col, x_target: float) -> PointMassPlan:
    """
    Control that always lands on one grid point

    The target snaps to the nearest grid point; a target more than half a
    step from every grid point is rejected.
    """
    grid = prior.grid
    if grid is None:
        raise InvalidArgumentError("Point-mass plan needs a gridded prior")
    index = grid.index_of(x_target)
    x_used = float(grid.points[index])
    if abs(x_used - x_target) > grid.step / 2 + 1e-9:
        raise InvalidArgumentError(f"Target {x_target} lies outside grid [{grid.lower}, {grid.upper}]")

    G = pointwise_info(truth_col, prior, index)
    p = prior.weights[index]
    R = math.inf if p <= 0 else -math.log2(p)
    return PointMassPlan(x_target=x_used, index=index, G=G, R=R, efficiency=efficiency_of(G, R))
