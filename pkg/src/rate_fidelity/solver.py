import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Sequence

import numpy as np

from src.core.exceptions import InvalidArgumentError, UnreachableGoalError
from src.core.models.prob_model import Pmf, SemanticChannel
from src.core.models.solver_model import (
    ConvergeTol,
    MessagePoint,
    RGCurve,
    RGPoint,
    SolverOptions,
    TiltWorkspace,
)
from src.core.utils.prob_utils import kl_divergence, to_bits, uniform_pmf
from src.rate_fidelity.tilt import build_tilt, channel_update, marginal_update, tilted_posteriors

# Configure logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger("RateFidelitySolver")

CONVERGED_L1 = 1e-10
# R below this counts as zero rate
ZERO_RATE = 1e-12


def efficiency_of(G: float, R: float) -> Optional[float]:
    """G/R, or None when R is zero or not finite"""
    if not np.isfinite(R) or R <= ZERO_RATE:
        return None
    return G / R


def efficiency(point) -> Optional[float]:
    """Information efficiency G/R of a solved point; None at R = 0 (s = 0)"""
    return efficiency_of(point.G, point.R)


def _purposive_rates(prior: Pmf, ws: TiltWorkspace, s: float, pa: np.ndarray):
    posteriors, log_z = tilted_posteriors(prior, ws, s)
    # log q - log P = s log m - log Z, so KL has a closed form
    per_goal_G = np.einsum("ij,ij->j", posteriors, ws.log_m)
    per_goal_R = s * per_goal_G - log_z
    # log T(theta_j|x_i) = log m_ij + log T(theta_j)
    log_truth = ws.log_m + np.log(ws.logical_probabilities)[None, :]
    per_goal_d = -np.einsum("ij,ij->j", posteriors, log_truth)
    G = float(to_bits(pa @ per_goal_G))
    R = max(0.0, float(to_bits(pa @ per_goal_R)))
    d = float(to_bits(pa @ per_goal_d))
    return posteriors, G, R, d


def solve_point(
    prior: Pmf,
    sem: SemanticChannel,
    s: float,
    init_py: Optional[Pmf] = None,
    opts: Optional[SolverOptions] = None,
    *,
    workspace: Optional[TiltWorkspace] = None,
) -> RGPoint:
    """
    Solve one parametric point of R(G)

    Alternates channel_update and marginal_update according to opts, then
    recomputes the channel from the reported P(y).

    Args:
        prior: P(x)
        sem: Goals as a semantic channel
        s: Tradeoff parameter, s = dR/dG
        init_py: Starting P(y), strictly positive; uniform when omitted
        opts: Iteration mode and truth floor; FixedIterations(3) when omitted
        workspace: Prebuilt tilt for the same prior, sem and floor

    Returns:
        RGPoint with purposive and channel-level readings
    """
    opts = opts or SolverOptions()
    ws = workspace or build_tilt(prior, sem, opts.truth_floor)
    py = init_py or uniform_pmf(ws.n_y)
    if py.size != ws.n_y:
        raise InvalidArgumentError(f"Initial P(y) has {py.size} outcomes, expected {ws.n_y}")
    if np.any(py.weights <= 0):
        raise InvalidArgumentError("Initial P(y) must be strictly positive")

    if isinstance(opts.mode, ConvergeTol):
        max_iter, tol = opts.mode.max_iter, opts.mode.tol
    else:
        max_iter, tol = opts.mode.count, None

    change = np.inf
    iterations = 0
    while iterations < max_iter:
        channel, _ = channel_update(ws, py, s)
        new_py = marginal_update(prior, channel)
        change = float(np.abs(new_py.weights - py.weights).sum())
        py = new_py
        iterations += 1
        if tol is not None and change < tol:
            break

    converged = change < (tol if tol is not None else CONVERGED_L1)
    if tol is not None and not converged:
        logger.warning(f"s={s}: P(y) not converged after {iterations} iterations (L1 change {change:.3e})")

    channel, log_lambda = channel_update(ws, py, s)
    posteriors, G, R, avg_distortion = _purposive_rates(prior, ws, s, py.weights)
    joint = prior.weights[:, None] * channel.matrix
    G_channel_nats = float(np.sum(joint * ws.log_m))
    R_channel = float(to_bits(s * G_channel_nats - prior.weights @ log_lambda))
    logger.debug(f"s={s}: G={G:.6f} R={R:.6f} bits after {iterations} iterations (L1 change {change:.3e})")

    return RGPoint(
        s=s,
        G=G,
        R=R,
        avg_distortion=avg_distortion,
        G_channel=float(to_bits(G_channel_nats)),
        R_channel=R_channel,
        py=py,
        channel=channel,
        posteriors=posteriors,
        iterations_used=iterations,
        converged=converged,
    )


def single_message_point(prior: Pmf, truth_col, s: float, truth_floor: float = 1e-12) -> MessagePoint:
    """One goal, no P(y) iteration: the tilted posterior against the prior"""
    column = np.asarray(truth_col, dtype=float)
    if column.ndim != 1 or column.size != prior.size:
        raise InvalidArgumentError(f"Truth column of shape {column.shape} does not match prior of size {prior.size}")
    if not column.max() > 0:
        raise UnreachableGoalError("Goal is false at every grid point")

    ws = build_tilt(prior, SemanticChannel.from_columns([column]), truth_floor)
    posteriors, _ = tilted_posteriors(prior, ws, s)
    posterior = Pmf(weights=posteriors[:, 0], grid=prior.grid)
    G = float(to_bits(posterior.weights @ ws.log_m[:, 0]))
    R = kl_divergence(posterior, prior)
    return MessagePoint(s=s, G=G, R=R, posterior=posterior)


def sweep(
    prior: Pmf,
    sem: SemanticChannel,
    s_list: Sequence[float],
    init_py: Optional[Pmf] = None,
    opts: Optional[SolverOptions] = None,
    warm_start: bool = True,
    parallel: bool = False,
    max_workers: Optional[int] = None,
) -> RGCurve:
    """
    Solve R(G) at every s

    With warm_start the s values are solved in the given order, each starting
    from the previous marginal. parallel solves every s from init_py on a
    thread pool and ignores warm_start.
    """
    if len(s_list) == 0:
        raise InvalidArgumentError("sweep needs at least one s value")
    opts = opts or SolverOptions()
    ws = build_tilt(prior, sem, opts.truth_floor)
    start = init_py or uniform_pmf(ws.n_y)

    if parallel:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            points = list(pool.map(lambda s: solve_point(prior, sem, s, start, opts, workspace=ws), s_list))
    else:
        points = []
        py = start
        for s in s_list:
            point = solve_point(prior, sem, s, py, opts, workspace=ws)
            points.append(point)
            # a marginal with a zero entry cannot seed the next solve
            if warm_start and np.all(point.py.weights > 0):
                py = point.py

    curve = RGCurve(points=sorted(points, key=lambda p: (p.G, p.s)))
    for entry in curve.secant_slopes():
        logger.debug(f"Secant slope on s in [{entry['s_lo']}, {entry['s_hi']}]: {entry['slope']}")
    if not curve.is_monotone():
        logger.warning("R(G) sweep is not monotone in s")
    return curve
