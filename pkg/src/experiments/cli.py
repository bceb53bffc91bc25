import os
import sys
import argparse
import logging
from typing import List, Optional

import yaml
from pydantic import ValidationError

from src.core.config import DEFAULT_CONFIG_PATH, load_settings
from src.core.exceptions import (
    EXIT_CONFIG,
    EXIT_NUMERIC,
    EXIT_OK,
    ConfigError,
    InvalidArgumentError,
    NumericError,
)
from src.experiments.emitters import emit_curve_csv
from src.experiments.runner import ScenarioRunner
from src.experiments.scenarios import BUILTIN_SCENARIOS, apply_overrides, get_scenario, list_scenarios, resolve_scenario
from src.experiments.tables import render_tables, reproduce_tables

# Configure logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger("SemanticRGCli")


def _add_overrides(parser: argparse.ArgumentParser):
    parser.add_argument("--grid-step", type=float, default=None, help="Override the grid step")
    parser.add_argument("--s", type=float, nargs="+", default=None, dest="s_values", help="Override the s values")
    parser.add_argument("--iterations", type=int, default=None, help="Use this many fixed P(y) iterations")
    parser.add_argument("--out-dir", default=None, help="Directory for CSV/JSON outputs")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semantic-rg",
        description="Semantic information G measure, R(G) solver and purposive range control",
    )
    parser.add_argument("--config", default=DEFAULT_CONFIG_PATH, help="Settings file")
    parser.add_argument("--log-level", default=None, help="Root log level (default from settings)")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="Run a scenario and write its outputs")
    run.add_argument("scenario", help="Built-in scenario name or YAML path")
    _add_overrides(run)

    curve = sub.add_parser("curve", help="Sweep the R(G) curve of a scenario and write it as CSV")
    curve.add_argument("scenario", help="Built-in scenario name or YAML path")
    _add_overrides(curve)

    tables = sub.add_parser("tables", help="Reproduce the published tables with tolerance verdicts")
    tables.add_argument("--out-dir", default=None, help="Also write the report text and JSON here")

    scenario = sub.add_parser("scenario", help="Inspect built-in scenarios")
    scenario_sub = scenario.add_subparsers(dest="scenario_command", required=True)
    scenario_sub.add_parser("list", help="List built-in scenarios")
    show = scenario_sub.add_parser("show", help="Print a built-in scenario as YAML")
    show.add_argument("name")
    return parser


def _load_config(args):
    config = resolve_scenario(args.scenario)
    return apply_overrides(config, grid_step=args.grid_step, s_values=args.s_values, iterations=args.iterations)


def _run(args, settings) -> int:
    config = _load_config(args)
    runner = ScenarioRunner(settings=settings, out_dir=args.out_dir)
    record = runner.run_scenario(config)
    for row in record.rows:
        eff = "n/a" if row.efficiency is None else f"{row.efficiency:.4f}"
        pa = ", ".join(f"{w:.4f}" for w in row.pa)
        print(f"s={row.s:g}  G={row.G_bits:.4f}  R={row.R_bits:.4f}  G/R={eff}  P(a)=[{pa}]")
    for row in record.surrogate:
        eff = "n/a" if row.efficiency1 is None else f"{row.efficiency1:.4f}"
        print(f"s={row.s:g}  G1={row.G1_bits:.4f}  R1={row.R1_bits:.4f}  G1/R1={eff}")
    for row in record.point_mass:
        eff = "n/a" if row.efficiency is None else f"{row.efficiency:.4f}"
        print(f"point mass x={row.x_target:g}  G={row.G_bits:.4f}  R={row.R_bits:.4f}  G/R={eff}")
    return EXIT_OK


def _curve(args, settings) -> int:
    config = _load_config(args)
    runner = ScenarioRunner(settings=settings, out_dir=args.out_dir)
    curve = runner.run_curve(config)
    name = config.outputs.curve_csv or f"{config.name}_curve.csv"
    path = emit_curve_csv(curve, os.path.join(runner.out_dir, name), include_pa=len(config.goals) > 1)
    print(path)
    return EXIT_OK


def _tables(args, settings) -> int:
    report = reproduce_tables(settings=settings)
    text = render_tables(report)
    print(text)
    if args.out_dir:
        os.makedirs(args.out_dir, exist_ok=True)
        with open(os.path.join(args.out_dir, "tables_report.txt"), "w", encoding="utf-8") as f:
            f.write(text)
        with open(os.path.join(args.out_dir, "tables_report.json"), "w", encoding="utf-8") as f:
            f.write(report.model_dump_json(indent=2))
    return report.exit_code


def _scenario(args) -> int:
    if args.scenario_command == "list":
        for name in list_scenarios():
            print(f"{name}\t{BUILTIN_SCENARIOS[name]().description}")
    else:
        print(yaml.safe_dump(get_scenario(args.name).model_dump(mode="json"), sort_keys=False), end="")
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    settings = load_settings(args.config)
    logging.getLogger().setLevel((args.log_level or settings.logging.level).upper())

    try:
        if args.command == "run":
            return _run(args, settings)
        if args.command == "curve":
            return _curve(args, settings)
        if args.command == "tables":
            return _tables(args, settings)
        return _scenario(args)
    except (ConfigError, ValidationError, InvalidArgumentError, OSError) as e:
        logger.error(f"Configuration error: {e}")
        return EXIT_CONFIG
    except NumericError as e:
        logger.error(f"Numeric error: {e}")
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
