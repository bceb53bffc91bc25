import itertools
import logging
import math
from typing import Dict, List, Tuple

import numpy as np

from src.core.exceptions import InvalidArgumentError, NoFeasibleFitError, NumericError
from src.core.models.info_model import TruthFit
from src.core.models.prob_model import Pmf
from src.core.models.spec_model import TRUTH_FAMILY_MODELS, TRUTH_FAMILY_PARAMS
from src.core.utils.prob_utils import truth_from_spec
from src.semantics.semantic_info import avg_semantic_info

# Configure logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger("TruthFitting")

# parameters that must stay strictly positive
POSITIVE_PARAMS = {"k", "w", "sigma", "p"}
INTEGER_PARAMS = {"p"}


def _check_box(family: str, search_box: Dict[str, Tuple[float, float]]) -> List[str]:
    if family not in TRUTH_FAMILY_PARAMS:
        raise InvalidArgumentError(f"Unknown truth family '{family}', expected one of {sorted(TRUTH_FAMILY_PARAMS)}")
    names = list(TRUTH_FAMILY_PARAMS[family])
    if set(search_box) != set(names):
        raise InvalidArgumentError(f"Search box for '{family}' needs exactly {names}, got {sorted(search_box)}")
    for name in names:
        lo, hi = search_box[name]
        if not lo <= hi:
            raise InvalidArgumentError(f"Empty search range for {name}: [{lo}, {hi}]")
        if name in POSITIVE_PARAMS and not lo > 0:
            raise InvalidArgumentError(f"Search range for {name} must be positive, got [{lo}, {hi}]")
        if name in INTEGER_PARAMS and math.floor(hi) < math.ceil(lo):
            raise InvalidArgumentError(f"Search range for {name} contains no integer: [{lo}, {hi}]")
    return names


def _axis(name: str, lo: float, hi: float, points: int) -> np.ndarray:
    if name in INTEGER_PARAMS:
        values = np.arange(math.ceil(lo), math.floor(hi) + 1)
        if values.size > points:
            values = np.unique(np.round(np.linspace(values[0], values[-1], points)))
        return values.astype(int)
    if lo == hi:
        return np.array([lo])
    return np.linspace(lo, hi, points)


def fit_truth(
    sample: Pmf,
    prior: Pmf,
    family: str,
    search_box: Dict[str, Tuple[float, float]],
    levels: int = 3,
    points_per_axis: int = 32,
) -> TruthFit:
    """
    Fit a parametric truth function to a sample

    Maximizes sum_i sample_i log2 [T(x_i) / T(theta)] by a deterministic
    coarse-to-fine grid search. Integer parameters are enumerated on the
    first level and held fixed afterwards; continuous ones shrink to one
    search step around the incumbent per level.

    Args:
        sample: Sampling distribution P(x|y_j)
        prior: P(x) on the same grid
        family: "logistic", "bell_power" or "gaussian_bell"
        search_box: {parameter: (low, high)} for every parameter of the family
        levels: Refinement levels
        points_per_axis: Candidates per continuous axis per level

    Returns:
        TruthFit with the best spec and its objective in bits
    """
    names = _check_box(family, search_box)
    if not sample.same_support(prior) or prior.grid is None:
        raise InvalidArgumentError("Sample and prior must share a grid")
    model = TRUTH_FAMILY_MODELS[family]

    box = {name: tuple(search_box[name]) for name in names}
    best_params, best_value = None, -math.inf
    evaluations = 0
    for level in range(levels):
        axes = {}
        for name in names:
            if name in INTEGER_PARAMS and best_params is not None:
                axes[name] = np.array([best_params[name]])
            else:
                axes[name] = _axis(name, box[name][0], box[name][1], points_per_axis)

        for combo in itertools.product(*(axes[name] for name in names)):
            params = {name: (int(v) if name in INTEGER_PARAMS else float(v)) for name, v in zip(names, combo)}
            evaluations += 1
            truth = truth_from_spec(model(**params), prior.grid)
            try:
                value = avg_semantic_info(sample, truth, prior)
            except NumericError:
                continue
            if value > best_value:
                best_params, best_value = params, value

        if best_params is None:
            raise NoFeasibleFitError(f"Objective is -inf over the whole {family} search box")

        for name in names:
            if name in INTEGER_PARAMS:
                continue
            axis = axes[name]
            step = axis[1] - axis[0] if axis.size > 1 else 0.0
            lo, hi = search_box[name]
            box[name] = (max(lo, best_params[name] - step), min(hi, best_params[name] + step))
        logger.debug(f"Level {level}: best {best_params} at {best_value:.6f} bits")

    logger.info(f"Fitted {family} truth {best_params} (objective {best_value:.6f} bits, {evaluations} evaluations)")
    return TruthFit(spec=model(**best_params), objective=best_value, evaluations=evaluations)
