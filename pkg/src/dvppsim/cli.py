"""Command-line surface: run configs, manage built-in scenarios, summarize CSVs.

Exit codes: 0 success, 1 configuration error, 2 numerical divergence.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

import numpy as np

from .config import builtin_config, load_config, save_config
from .errors import ConfigError, DivergenceError
from .output import STEADY_WINDOW_FRACTION, emit_outputs, format_summary, summarize
from .scenario import builtin_scenarios
from .simulate import run


def _resolve_config(ref: str):
    path = Path(ref)
    if path.exists():
        return load_config(path)
    if ref in builtin_scenarios():
        return builtin_config(ref)
    raise ConfigError(f"{ref!r} is neither a config file nor a built-in scenario name")


def _cmd_run(args) -> int:
    cfg = _resolve_config(args.config)
    if args.dt is not None:
        cfg.dt_s = args.dt
    if args.duration is not None:
        cfg.duration_s = args.duration
    if args.out_dir is not None:
        if cfg.output.csv is not None:
            cfg.output.csv = str(Path(args.out_dir) / Path(cfg.output.csv).name)
        cfg.output.plot_dir = args.out_dir
    output = run(cfg)
    paths = emit_outputs(output, cfg)
    if not output.empty:
        print(format_summary(summarize(output)))
    for p in paths:
        print(f"wrote {p}")
    return 0


def _cmd_scenario(args) -> int:
    scenarios = builtin_scenarios()
    if args.scenario_command == "list":
        for name, sc in scenarios.items():
            print(f"{name:15s} {sc.duration_s:6.0f} s  {sc.description}")
        return 0
    # export
    cfg = builtin_config(args.name)
    path = Path(args.path) if args.path else Path(f"{args.name}.yaml")
    save_config(cfg, path)
    print(f"wrote {path}")
    return 0


def _read_csv(path: Path) -> tuple[list[str], np.ndarray]:
    try:
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            rows = [[float(v) for v in row] for row in reader]
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from None
    except ValueError as exc:
        raise ConfigError(f"{path} is not a numeric series CSV: {exc}") from None
    if not header:
        raise ConfigError(f"{path} has no header row")
    return header, np.asarray(rows, dtype=float)


def _cmd_summarize(args) -> int:
    header, table = _read_csv(Path(args.csv))
    if table.size == 0:
        raise ConfigError(f"{args.csv} has no data rows")
    cols = {name: table[:, i] for i, name in enumerate(header)}
    if "t_s" not in cols:
        raise ConfigError(f"{args.csv} has no 't_s' column")
    t = cols["t_s"]
    steady = slice(int((1.0 - STEADY_WINDOW_FRACTION) * len(t)), len(t))
    areas = [c[: -len("_delta_f_hz")] for c in header if c.endswith("_delta_f_hz")]
    print(f"summary of {args.csv} ({len(t)} rows, t = {t[0]:g}..{t[-1]:g} s)")
    for a in areas:
        df = cols[f"{a}_delta_f_hz"]
        i = int(np.argmin(df))
        print(f"  {a}: nadir {df[i]:+.4f} Hz at t={t[i]:.2f} s, steady max |df| {np.max(np.abs(df[steady])):.2e} Hz")
        ace_col = f"{a}_ace_pu"
        if ace_col in cols:
            print(f"    steady max |ace| {np.max(np.abs(cols[ace_col][steady])):.2e} pu")
        for name in header:
            if name.startswith(f"{a}_") and (name.endswith("_dp_mw") or name.endswith("_p_mw") or name.endswith("_dvpp_total_mw")):
                series = cols[name]
                # first row is the pre-disturbance equilibrium, used as the baseline
                delta = float(np.mean(series[steady]) - series[0])
                print(f"    {name}: steady delta {delta:+.3f} MW")
    for name in header:
        if name.startswith("tie_") and name.endswith("_dp_pu"):
            series = cols[name]
            print(f"  {name}: steady {np.mean(series[steady]):+.2e} pu (max |.| {np.max(np.abs(series[steady])):.2e})")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dvppsim",
        description="Multi-area frequency-dynamics simulator with a wind aggregate "
        "participating directly in secondary frequency control.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a config file or a built-in scenario")
    p_run.add_argument("config", help="config file path or built-in scenario name")
    p_run.add_argument("--dt", type=float, help="override step size [s]")
    p_run.add_argument("--duration", type=float, help="override run duration [s]")
    p_run.add_argument("--out-dir", help="redirect CSV and plot output")

    p_sc = sub.add_parser("scenario", help="list or export the built-in scenarios")
    sc_sub = p_sc.add_subparsers(dest="scenario_command", required=True)
    sc_sub.add_parser("list", help="list built-in scenario names")
    p_exp = sc_sub.add_parser("export", help="write a built-in scenario as an editable config")
    p_exp.add_argument("name")
    p_exp.add_argument("--path", help="output file (default: <name>.yaml)")

    p_sum = sub.add_parser("summarize", help="print summary statistics of a run CSV")
    p_sum.add_argument("csv")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "scenario":
            return _cmd_scenario(args)
        return _cmd_summarize(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except DivergenceError as exc:
        print(f"numerical divergence: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
