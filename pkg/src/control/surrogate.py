import logging
import math
from typing import Optional, Sequence

from src.core.exceptions import DegenerateSurrogateError, InvalidArgumentError
from src.core.models.control_model import GaussianFit, SurrogatePlan
from src.core.models.prob_model import Pmf, SemanticChannel
from src.core.models.spec_model import NormalPrior
from src.core.utils.prob_utils import pmf_from_spec
from src.control.purposive import mixture_rate, multi_goal_purposive
from src.rate_fidelity.solver import efficiency_of

# Configure logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger("GaussianSurrogate")


def gaussian_surrogate(source: Pmf) -> GaussianFit:
    """
    Normal distribution with the mean and population variance of source

    Args:
        source: Pmf on a grid with positive variance

    Returns:
        GaussianFit; the surrogate is sampled on the source grid and renormalized
    """
    if source.grid is None:
        raise InvalidArgumentError("Gaussian surrogate needs a gridded source")
    mu = source.mean()
    variance = source.variance()
    if not variance > 0:
        raise DegenerateSurrogateError(f"Source has zero variance (all mass at {mu})")
    sigma = math.sqrt(variance)
    surrogate = pmf_from_spec(NormalPrior(mu=mu, sigma=sigma), source.grid)
    return GaussianFit(mu=mu, sigma=sigma, surrogate=surrogate)


def surrogate_rg(
    prior: Pmf,
    sem: SemanticChannel,
    pa: Pmf,
    source_posteriors: Sequence[Pmf],
    truth_floor: Optional[float] = None,
) -> SurrogatePlan:
    """Replace every goal posterior by its Gaussian surrogate and rescore G1, R1 against the prior"""
    fits = [gaussian_surrogate(posterior) for posterior in source_posteriors]
    surrogates = [fit.surrogate for fit in fits]
    G1 = multi_goal_purposive(surrogates, pa, sem, prior, truth_floor)
    R1 = mixture_rate(surrogates, pa, prior)
    logger.debug(f"Surrogate plan: G1={G1:.6f} R1={R1:.6f} bits")
    return SurrogatePlan(
        betas=[fit.beta for fit in fits],
        surrogate_posteriors=surrogates,
        G1=G1,
        R1=R1,
        efficiency1=efficiency_of(G1, R1),
    )
