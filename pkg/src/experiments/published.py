from typing import Dict, List, Optional

from src.core.config import Settings
from src.core.models.report_model import TableCell

# published single-goal values, keyed by s
TABLE1_EXPECTED = {
    1.0: {"R": 2.19, "G": 2.19, "G/R": 1.0, "R1": 2.08, "G1": 1.99, "G1/R1": 0.95},
    20.0: {"R": 3.36, "G": 2.58, "G/R": 0.77, "R1": 3.13, "G1": 2.52, "G1/R1": 0.80},
    40.0: {"R": 3.58, "G": 2.59, "G/R": 0.72, "R1": 3.38, "G1": 2.55, "G1/R1": 0.76},
}

# published two-goal values, keyed by (s, c)
TABLE2_EXPECTED = {
    (1.0, 75.0): {"P(a0)": 0.535, "G": 3.43, "R": 3.43, "G/R": 1.0},
    (1.0, 80.0): {"P(a0)": 0.579, "G": 3.80, "R": 3.80, "G/R": 1.0},
    (5.0, 75.0): {"P(a0)": 0.540, "G": 3.89, "R": 4.29, "G/R": 0.907},
    (5.0, 80.0): {"P(a0)": 0.592, "G": 4.28, "R": 4.71, "G/R": 0.909},
    (40.0, 75.0): {"P(a0)": 0.540, "G": 3.95, "R": 5.01, "G/R": 0.803},
    (40.0, 80.0): {"P(a0)": 0.592, "G": 4.33, "R": 5.34, "G/R": 0.811},
}

POINT_MASS_X = 80.0
POINT_MASS_EXPECTED = 0.23
BIT_QUANTITIES = ("R", "G", "R1", "G1")

# built-in scenarios whose rows have published counterparts
TWO_GOAL_THRESHOLDS = {"two_goal_c75": 75.0, "two_goal_c80": 80.0}

Values = Dict[float, Dict[str, Optional[float]]]


def table1_cells(values: Values, settings: Settings) -> List[TableCell]:
    """Judge single-goal values keyed by s; rows or quantities not computed are skipped"""
    tol = settings.tolerances
    cells = []
    for s, expected in TABLE1_EXPECTED.items():
        if s not in values:
            continue
        for quantity, published in expected.items():
            if quantity not in values[s]:
                continue
            tolerance = tol.table1_bits if quantity in BIT_QUANTITIES else tol.table1_efficiency
            cells.append(TableCell.judge("Table 1", f"s={s:g}", quantity, values[s][quantity], published, tolerance))
    return cells


def table2_cells(values: Dict[float, Values], settings: Settings) -> List[TableCell]:
    """Judge two-goal values keyed by c, then s"""
    tol = settings.tolerances
    tolerances = {"P(a0)": tol.table2_pa, "G": tol.table2_bits, "R": tol.table2_bits, "G/R": tol.table2_efficiency}
    cells = []
    for (s, c), expected in TABLE2_EXPECTED.items():
        if s not in values.get(c, {}):
            continue
        for quantity, published in expected.items():
            cells.append(
                TableCell.judge("Table 2", f"s={s:g}, c={c:g}", quantity, values[c][s][quantity], published, tolerances[quantity])
            )
    return cells
