import numpy as np
import pytest

from src.core.exceptions import InvalidArgumentError
from src.core.models.solver_model import RGCurve, SolverOptions
from src.experiments.emitters import curve_frame, emit_curve_csv, read_curve_csv
from src.experiments.scenarios import MORTALITY_CURVE_S
from src.rate_fidelity.solver import sweep


def test_single_point_csv(tmp_path, two_goal_c75):
    prior, sem = two_goal_c75
    curve = sweep(prior, sem, [1.0])
    path = emit_curve_csv(curve, str(tmp_path / "one.csv"))
    with open(path, encoding="utf-8") as f:
        lines = f.read().splitlines()
    assert len(lines) == 2
    assert lines[0] == "s,G_bits,R_bits,efficiency"


def test_zero_rate_leaves_efficiency_empty(tmp_path, two_goal_c75):
    prior, sem = two_goal_c75
    path = emit_curve_csv(sweep(prior, sem, [0.0, 1.0], warm_start=False), str(tmp_path / "curve.csv"), include_pa=True)
    frame = read_curve_csv(path)
    assert list(frame.columns) == ["s", "G_bits", "R_bits", "efficiency", "pa_0", "pa_1"]
    assert np.isnan(frame["efficiency"].iloc[0])
    assert frame["efficiency"].iloc[1] == pytest.approx(1.0, abs=1e-8)


def test_mortality_curve_round_trip(tmp_path, mortality_prior, mortality_sem):
    curve = sweep(mortality_prior, mortality_sem, MORTALITY_CURVE_S, opts=SolverOptions.converging())
    path = emit_curve_csv(curve, str(tmp_path / "nested" / "mortality.csv"))
    frame = read_curve_csv(path)

    assert list(frame["s"]) == sorted(MORTALITY_CURVE_S)
    assert frame["G_bits"].is_monotonic_increasing
    assert frame["R_bits"].is_monotonic_increasing
    expected = curve_frame(curve)
    assert np.allclose(frame["G_bits"], expected["G_bits"], rtol=1e-8)
    assert np.allclose(frame["R_bits"], expected["R_bits"], rtol=1e-8, atol=1e-12)


def test_empty_curve_rejected(tmp_path):
    with pytest.raises(InvalidArgumentError):
        emit_curve_csv(RGCurve(points=[]), str(tmp_path / "empty.csv"))
