import os

import pandas as pd
import yaml

from src.experiments.cli import main

UNREACHABLE = """
name: unreachable
grid: {lower: 0, upper: 2, step: 1}
prior: {kind: tabulated, weights: [1, 1, 1]}
goals:
  - {kind: tabulated, values: [0, 0, 0]}
s_values: [1]
"""


def test_scenario_list(capsys):
    assert main(["scenario", "list"]) == 0
    out = capsys.readouterr().out
    assert "mortality" in out and "two_goal_c80" in out


def test_scenario_show(capsys):
    assert main(["scenario", "show", "two_goal_c75"]) == 0
    shown = yaml.safe_load(capsys.readouterr().out)
    assert shown["name"] == "two_goal_c75"
    assert shown["goals"][1]["c"] == 75


def test_run_writes_outputs(tmp_path, capsys):
    assert main(["run", "two_goal_c80", "--s", "1", "5", "--out-dir", str(tmp_path)]) == 0
    assert os.path.exists(tmp_path / "two_goal_c80_curve.csv")
    assert os.path.exists(tmp_path / "two_goal_c80_summary.json")
    assert "G/R=1.0000" in capsys.readouterr().out


def test_curve_command(tmp_path):
    assert main(["curve", "two_goal_c75", "--s", "0", "1", "5", "--out-dir", str(tmp_path)]) == 0
    frame = pd.read_csv(tmp_path / "two_goal_c75_curve.csv")
    assert list(frame["s"]) == [0, 1, 5]
    assert "pa_1" in frame.columns


def test_missing_scenario_file(tmp_path):
    assert main(["run", str(tmp_path / "missing.yaml")]) == 2


def test_invalid_scenario_file(tmp_path):
    path = tmp_path / "bad.yaml"
    path.write_text(UNREACHABLE.replace("s_values: [1]", "s_values: []"), encoding="utf-8")
    assert main(["run", str(path), "--out-dir", str(tmp_path)]) == 2


def test_invalid_override(tmp_path):
    assert main(["run", "mortality", "--iterations", "0", "--out-dir", str(tmp_path)]) == 2


def test_numeric_failure(tmp_path):
    path = tmp_path / "unreachable.yaml"
    path.write_text(UNREACHABLE, encoding="utf-8")
    assert main(["run", str(path), "--out-dir", str(tmp_path)]) == 3


def test_tables_exit_codes(tmp_path):
    assert main(["tables", "--out-dir", str(tmp_path)]) == 1
    assert os.path.exists(tmp_path / "tables_report.txt")
    assert os.path.exists(tmp_path / "tables_report.json")

    config = tmp_path / "loose.yaml"
    config.write_text(
        yaml.safe_dump({"tolerances": {key: 1.0 for key in (
            "table1_bits", "table1_efficiency", "table2_pa", "table2_bits",
            "table2_efficiency", "point_mass_efficiency", "grid_sensitivity_bits",
        )}}),
        encoding="utf-8",
    )
    assert main(["--config", str(config), "tables"]) == 0
