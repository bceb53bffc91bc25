import numpy as np
import pytest
from fastapi.testclient import TestClient
from src.api.main import app
from src.core.models.prob_model import Pmf, SemanticChannel
from src.core.models.spec_model import LogisticTruth, NormalPrior
from src.core.utils.prob_utils import make_grid, pmf_from_spec, semantic_channel_from_specs, truth_from_spec
from src.experiments.scenarios import two_goal_scenario

@pytest.fixture(scope="session")
def client():
    return TestClient(app)

@pytest.fixture(scope="session")
def small_prior():
    """Three-point prior used by the hand-computed examples"""
    return Pmf(weights=[0.5, 0.25, 0.25], grid=make_grid(0, 2, 1))

@pytest.fixture(scope="session")
def small_truth():
    return np.array([1.0, 0.5, 0.0])

@pytest.fixture(scope="session")
def mortality_grid():
    return make_grid(0, 120, 1)

@pytest.fixture(scope="session")
def mortality_prior(mortality_grid):
    return pmf_from_spec(NormalPrior(mu=70, sigma=10), mortality_grid)

@pytest.fixture(scope="session")
def mortality_truth(mortality_grid):
    return truth_from_spec(LogisticTruth(c=80, k=0.8), mortality_grid)

@pytest.fixture(scope="session")
def mortality_sem(mortality_truth):
    return SemanticChannel.from_columns([mortality_truth])

def _two_goal(c):
    config = two_goal_scenario(c)
    grid = make_grid(config.grid.lower, config.grid.upper, config.grid.step)
    return pmf_from_spec(config.prior, grid), semantic_channel_from_specs(config.goals, grid)

@pytest.fixture(scope="session")
def two_goal_c75():
    """(prior, semantic channel) of the two-goal experiment with c=75"""
    return _two_goal(75)

@pytest.fixture(scope="session")
def two_goal_c80():
    return _two_goal(80)

@pytest.fixture
def rng():
    return np.random.default_rng(20240417)
