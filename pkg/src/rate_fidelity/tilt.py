from typing import Tuple

import numpy as np
from scipy.special import logsumexp

from src.core.exceptions import InvalidArgumentError, UnreachableGoalError
from src.core.models.prob_model import Pmf, SemanticChannel, ShannonChannel
from src.core.models.solver_model import TiltWorkspace


def _log(values: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore"):
        return np.log(values)


def build_tilt(prior: Pmf, sem: SemanticChannel, truth_floor: float) -> TiltWorkspace:
    """
    Precompute log m_ij = log T(theta_j|x_i) - log T(theta_j)

    Truth values below truth_floor are raised to it, and T(theta_j) is taken
    from the floored column so that sum_i P(x_i) m_ij = 1.
    """
    if sem.n_x != prior.size:
        raise InvalidArgumentError(f"Semantic channel has {sem.n_x} rows, prior has {prior.size} outcomes")
    below = sem.matrix.max(axis=0) < truth_floor
    if np.any(below):
        raise UnreachableGoalError(f"Goals {np.flatnonzero(below).tolist()} lie below the truth floor {truth_floor:g} everywhere")

    truth = np.maximum(sem.matrix, truth_floor)
    logical = prior.weights @ truth
    log_m = np.log(truth) - np.log(logical)[None, :]
    log_m.flags.writeable = False
    logical.flags.writeable = False
    return TiltWorkspace(log_m=log_m, logical_probabilities=logical, truth_floor=truth_floor)


def channel_update(ws: TiltWorkspace, py: Pmf, s: float) -> Tuple[ShannonChannel, np.ndarray]:
    """
    P(y_j|x_i) = P(y_j) m_ij^s / lambda_i, evaluated in log space

    Returns:
        (channel, log lambda_i per row)
    """
    if py.size != ws.n_y:
        raise InvalidArgumentError(f"P(y) has {py.size} outcomes, workspace has {ws.n_y} goals")
    log_num = _log(py.weights)[None, :] + s * ws.log_m
    log_lambda = logsumexp(log_num, axis=1)
    rows = np.exp(log_num - log_lambda[:, None])
    rows /= rows.sum(axis=1, keepdims=True)
    return ShannonChannel(matrix=rows), log_lambda


def marginal_update(prior: Pmf, channel: ShannonChannel) -> Pmf:
    """P(y_j) = sum_i P(x_i) P(y_j|x_i)"""
    if channel.n_x != prior.size:
        raise InvalidArgumentError(f"Channel has {channel.n_x} rows, prior has {prior.size} outcomes")
    py = prior.weights @ channel.matrix
    return Pmf(weights=py / py.sum())


def tilted_posteriors(prior: Pmf, ws: TiltWorkspace, s: float) -> Tuple[np.ndarray, np.ndarray]:
    """
    Goal posteriors P(x|theta_j, s) proportional to P(x) m_ij^s

    Returns:
        (n_x by n_y posterior matrix, log normalizer per goal)
    """
    log_q = _log(prior.weights)[:, None] + s * ws.log_m
    log_z = logsumexp(log_q, axis=0)
    q = np.exp(log_q - log_z[None, :])
    q /= q.sum(axis=0, keepdims=True)
    return q, log_z
