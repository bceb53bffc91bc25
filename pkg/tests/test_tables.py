import pytest

from src.core.config import Settings, ToleranceSettings
from src.experiments.tables import render_tables, reproduce_tables

LOOSE = ToleranceSettings(
    table1_bits=1.0,
    table1_efficiency=1.0,
    table2_pa=1.0,
    table2_bits=1.0,
    table2_efficiency=1.0,
    point_mass_efficiency=1.0,
    grid_sensitivity_bits=1.0,
)


@pytest.fixture(scope="module")
def report():
    return reproduce_tables(settings=Settings())


def _cells(report, table, quantity=None):
    return [c for c in report.cells if c.table == table and (quantity is None or c.quantity == quantity)]


def test_single_goal_table_within_tolerance(report):
    cells = _cells(report, "Table 1")
    assert len(cells) == 18
    assert all(cell.passed for cell in cells)


def test_two_goal_information_within_tolerance(report):
    cells = _cells(report, "Table 2", "G")
    assert len(cells) == 6
    assert all(cell.passed for cell in cells)


def test_two_goal_misses_are_reported(report):
    failures = report.failures
    assert failures
    assert all(c.table == "Table 2" and c.quantity in ("P(a0)", "R") for c in failures)
    assert any(c.row == "s=5, c=80" and c.quantity == "P(a0)" for c in failures)
    assert report.exit_code == 1 and not report.all_passed


def test_first_action_probability_near_solver_value(report):
    computed = {c.row: c.computed for c in _cells(report, "Table 2", "P(a0)")}
    assert computed["s=1, c=75"] == pytest.approx(0.5191, abs=0.005)
    assert computed["s=40, c=80"] == pytest.approx(0.5595, abs=0.005)


def test_point_mass_and_trends_pass(report):
    (cell,) = _cells(report, "Point mass")
    assert cell.passed
    assert cell.computed == pytest.approx(0.2175, abs=0.005)
    assert report.trends and all(t.passed for t in report.trends)
    assert report.grid_sensitivity.passed


def test_loose_tolerances_pass():
    loose = reproduce_tables(settings=Settings(tolerances=LOOSE))
    assert loose.all_passed and loose.exit_code == 0


def test_rendered_report(report):
    text = render_tables(report)
    for heading in ("Table 1", "Table 2", "Point mass", "Trends", "Grid sensitivity"):
        assert heading in text
    assert "FAIL" in text and "PASS" in text
