import numpy as np
import pytest

from src.core.exceptions import InvalidArgumentError, UnreachableGoalError
from src.core.models.prob_model import Pmf, SemanticChannel, ShannonChannel
from src.core.models.spec_model import GaussianBellTruth, NormalPrior
from src.core.utils.prob_utils import make_grid, pmf_from_spec, truth_from_spec, uniform_pmf
from src.rate_fidelity.tilt import build_tilt, channel_update, marginal_update, tilted_posteriors
from src.semantics.semantic_info import semantic_bayes

FLOOR = 1e-12


def test_build_tilt_hand_example(small_prior, small_truth):
    ws = build_tilt(small_prior, SemanticChannel.from_columns([small_truth]), FLOOR)
    assert np.allclose(np.exp(ws.log_m[:, 0]), [1.6, 0.8, FLOOR / 0.625], rtol=1e-9)
    assert small_prior.weights @ np.exp(ws.log_m[:, 0]) == pytest.approx(1.0, abs=1e-12)
    assert not ws.log_m.flags.writeable
    assert (ws.n_x, ws.n_y) == (3, 1)


def test_build_tilt_tautology_has_zero_log_ratio(small_prior):
    ws = build_tilt(small_prior, SemanticChannel(matrix=np.ones((3, 2))), FLOOR)
    assert np.all(ws.log_m == 0)


def test_build_tilt_rejects_goal_below_floor(small_prior):
    with pytest.raises(UnreachableGoalError):
        build_tilt(small_prior, SemanticChannel.from_columns([[1e-13, 1e-14, 0.0]]), FLOOR)


def test_build_tilt_rejects_shape_mismatch(small_prior):
    with pytest.raises(InvalidArgumentError):
        build_tilt(small_prior, SemanticChannel(matrix=np.ones((2, 1))), FLOOR)


def test_channel_update_at_zero_s_copies_marginal(two_goal_c75):
    prior, sem = two_goal_c75
    ws = build_tilt(prior, sem, FLOOR)
    py = Pmf(weights=[0.3, 0.7])
    channel, log_lambda = channel_update(ws, py, 0.0)
    assert np.allclose(channel.matrix, np.tile(py.weights, (ws.n_x, 1)), atol=1e-12)
    assert np.allclose(log_lambda, 0.0, atol=1e-12)


def test_channel_update_matches_direct_formula(small_prior, small_truth):
    sem = SemanticChannel.from_columns([small_truth, [0.5, 0.5, 1.0]])
    ws = build_tilt(small_prior, sem, FLOOR)
    py = Pmf(weights=[0.6, 0.4])
    channel, log_lambda = channel_update(ws, py, 1.0)

    m = np.exp(ws.log_m)
    unnormalized = py.weights[None, :] * m
    assert np.allclose(channel.matrix, unnormalized / unnormalized.sum(axis=1, keepdims=True), atol=1e-12)
    assert np.allclose(np.exp(log_lambda), unnormalized.sum(axis=1), rtol=1e-12)


def test_channel_update_stable_at_large_s(two_goal_c75):
    prior, sem = two_goal_c75
    ws = build_tilt(prior, sem, FLOOR)
    channel, log_lambda = channel_update(ws, uniform_pmf(2), 200.0)
    assert np.all(np.isfinite(channel.matrix)) and np.all(np.isfinite(log_lambda))
    assert np.allclose(channel.matrix.sum(axis=1), 1.0, atol=1e-12)

    # rows concentrate on the goal with the larger log m
    decided = np.abs(ws.log_m[:, 0] - ws.log_m[:, 1]) > 1e-3
    assert np.array_equal(
        np.argmax(channel.matrix, axis=1)[decided], np.argmax(ws.log_m, axis=1)[decided]
    )


def test_channel_update_rejects_wrong_marginal_size(two_goal_c75):
    prior, sem = two_goal_c75
    ws = build_tilt(prior, sem, FLOOR)
    with pytest.raises(InvalidArgumentError):
        channel_update(ws, uniform_pmf(3), 1.0)


def test_marginal_update_of_constant_rows():
    prior = Pmf(weights=[0.1, 0.2, 0.7])
    channel = ShannonChannel(matrix=np.tile([0.25, 0.75], (3, 1)))
    assert np.allclose(marginal_update(prior, channel).weights, [0.25, 0.75])


def test_mirror_goals_split_marginal_evenly():
    grid = make_grid(0, 10, 1)
    prior = pmf_from_spec(NormalPrior(mu=5, sigma=2), grid)
    sem = SemanticChannel.from_columns(
        [truth_from_spec(GaussianBellTruth(c=2, sigma=1.5), grid), truth_from_spec(GaussianBellTruth(c=8, sigma=1.5), grid)]
    )
    ws = build_tilt(prior, sem, FLOOR)
    channel, _ = channel_update(ws, uniform_pmf(2), 1.0)
    assert np.allclose(marginal_update(prior, channel).weights, [0.5, 0.5], atol=1e-12)


def test_tilted_posteriors_interpolate_prior_and_semantic_bayes(mortality_prior, mortality_sem, mortality_truth):
    ws = build_tilt(mortality_prior, mortality_sem, FLOOR)

    q0, log_z0 = tilted_posteriors(mortality_prior, ws, 0.0)
    assert np.allclose(q0[:, 0], mortality_prior.weights, atol=1e-15)
    assert log_z0[0] == pytest.approx(0.0, abs=1e-12)

    q1, log_z1 = tilted_posteriors(mortality_prior, ws, 1.0)
    assert np.allclose(q1[:, 0], semantic_bayes(mortality_truth, mortality_prior).weights, atol=1e-10)
    assert log_z1[0] == pytest.approx(0.0, abs=1e-12)


def test_two_goal_marginal_after_three_iterations(two_goal_c75):
    prior, sem = two_goal_c75
    ws = build_tilt(prior, sem, FLOOR)
    py = uniform_pmf(2)
    for _ in range(3):
        channel, _ = channel_update(ws, py, 1.0)
        py = marginal_update(prior, channel)
    assert py.weights[0] == pytest.approx(0.519, abs=0.005)
    assert abs(py.weights[0] - 0.535) < 0.02
