from typing import List, Optional

from pydantic import BaseModel, Field

from src.core.exceptions import EXIT_OK, EXIT_TOLERANCE


class TableCell(BaseModel):
    """Computed value against a published one"""
    table: str
    row: str = Field(description="Row label, e.g. 's=20' or 's=40, c=80'")
    quantity: str
    computed: Optional[float]
    expected: float
    tolerance: float
    delta: Optional[float] = None
    passed: bool = False

    @classmethod
    def judge(cls, table: str, row: str, quantity: str, computed: Optional[float], expected: float, tolerance: float) -> "TableCell":
        if computed is None:
            return cls(table=table, row=row, quantity=quantity, computed=None, expected=expected, tolerance=tolerance)
        delta = abs(computed - expected)
        return cls(
            table=table, row=row, quantity=quantity, computed=computed, expected=expected,
            tolerance=tolerance, delta=delta, passed=delta <= tolerance,
        )


class TrendCheck(BaseModel):
    claim: str
    detail: str
    passed: bool


class GridSensitivity(BaseModel):
    steps: List[float]
    values: List[List[float]] = Field(description="Table bit values per step, same cell order for every step")
    max_change: float = Field(description="Largest bit-value change between the two finest grids")
    tolerance: float
    passed: bool


class TablesReport(BaseModel):
    cells: List[TableCell]
    trends: List[TrendCheck] = Field(default_factory=list)
    grid_sensitivity: GridSensitivity

    @property
    def failures(self) -> List[TableCell]:
        return [cell for cell in self.cells if not cell.passed]

    @property
    def all_passed(self) -> bool:
        return not self.failures and all(t.passed for t in self.trends) and self.grid_sensitivity.passed

    @property
    def exit_code(self) -> int:
        return EXIT_OK if self.all_passed else EXIT_TOLERANCE
