import os
import logging

import numpy as np
import pandas as pd

from src.core.exceptions import InvalidArgumentError, OutputError
from src.core.models.scenario_model import RunRecord
from src.core.models.solver_model import RGCurve
from src.rate_fidelity.solver import efficiency

# Configure logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger("ResultEmitter")

CURVE_COLUMNS = ["s", "G_bits", "R_bits", "efficiency"]
FLOAT_FORMAT = "%.9g"


def _prepare(path: str):
    try:
        os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    except OSError as e:
        raise OutputError(f"Cannot create directory for {path}: {e}") from e


def curve_frame(curve: RGCurve, include_pa: bool = False) -> pd.DataFrame:
    """One row per point, sorted by s"""
    records = []
    for point in curve.by_s():
        eff = efficiency(point)
        row = {"s": point.s, "G_bits": point.G, "R_bits": point.R, "efficiency": np.nan if eff is None else eff}
        if include_pa:
            for j, weight in enumerate(point.py.weights):
                row[f"pa_{j}"] = weight
        records.append(row)
    frame = pd.DataFrame.from_records(records)
    return frame.astype(float)


def emit_curve_csv(curve: RGCurve, path: str, include_pa: bool = False) -> str:
    """
    Write a plot-ready curve CSV

    Args:
        curve: Solved R(G) curve
        path: Output file
        include_pa: Append one pa_j column per action

    Returns:
        Path written
    """
    if not curve.points:
        raise InvalidArgumentError("Cannot emit an empty curve")
    frame = curve_frame(curve, include_pa)
    _prepare(path)
    try:
        frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n", encoding="utf-8")
    except OSError as e:
        raise OutputError(f"Cannot write curve to {path}: {e}") from e
    logger.info(f"Wrote {len(frame)} curve points to {path}")
    return path


def read_curve_csv(path: str) -> pd.DataFrame:
    return pd.read_csv(path)


def emit_summary_json(record: RunRecord, path: str) -> str:
    _prepare(path)
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(record.model_dump_json(indent=2))
    except OSError as e:
        raise OutputError(f"Cannot write summary to {path}: {e}") from e
    logger.info(f"Wrote run summary for {record.metadata.scenario} to {path}")
    return path
