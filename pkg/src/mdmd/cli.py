"""Command-line front end for ensemble experiments.

Runs seeded ensembles over the chosen observable modes and writes the
per-member optimum table (CSV) and aggregate summary (JSON).  All options
can also come from a JSON config file; explicit flags override file values.
Exit status is 0 iff at least one member succeeded for every requested mode.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .ensemble import (
    ExperimentConfig,
    emit_csv,
    modes_with_success,
    run_experiment,
    write_summary,
)
from .errors import ConfigurationError
from .solver import write_snapshots

_CONFIG_KEYS = {
    "epsilon",
    "weight",
    "mode",
    "members",
    "base_seed",
    "half_length",
    "num_points",
    "dt",
    "t_final",
    "x_secondary",
    "wavelet",
    "tol_values",
    "level_values",
    "substeps",
    "oversample",
    "out_csv",
    "out_json",
    "snapshot_dir",
}


def _parse_range(text: str) -> tuple[int, ...]:
    """Inclusive integer range 'lo:hi' (or a single integer)."""
    if ":" in text:
        lo, hi = text.split(":", 1)
        values = tuple(range(int(lo), int(hi) + 1))
    else:
        values = (int(text),)
    if not values:
        raise argparse.ArgumentTypeError(f"empty range: {text!r}")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mdmd-ensemble",
        description="Run seeded ensemble sweeps and emit CSV/JSON plot data.",
    )
    parser.add_argument("--config", help="JSON config file; flags override its values")
    parser.add_argument("--epsilon", type=float, help="perturbation amplitude (default 0.05)")
    parser.add_argument("--weight", type=float, help="spectral-error weight in [0, 2] (default 0.01)")
    parser.add_argument("--mode", choices=("dmd", "mdmd", "both"), help="observable mode (default both)")
    parser.add_argument("--members", type=int, help="ensemble size (default 16)")
    parser.add_argument("--seed", type=int, dest="base_seed", help="base seed; member i uses seed+i")
    parser.add_argument("--L", type=float, dest="half_length", help="domain half-length (default 32)")
    parser.add_argument("--grid-points", type=int, dest="num_points", help="grid size, power of two (default 256)")
    parser.add_argument("--dt", type=float, help="sampling time step (default 0.1)")
    parser.add_argument("--tf", type=float, dest="t_final", help="final time (default 30)")
    parser.add_argument("--xs", type=float, dest="x_secondary", help="secondary peak location (default 5)")
    parser.add_argument("--tl-range", type=_parse_range, dest="tol_values", metavar="LO:HI",
                        help="truncation tolerance range (default 2:10)")
    parser.add_argument("--nlvl-range", type=_parse_range, dest="level_values", metavar="LO:HI",
                        help="decomposition depth range (default 1:log2(K)-1)")
    parser.add_argument("--wavelet", help="wavelet family name (default db2)")
    parser.add_argument("--substeps", type=int, help="integrator stages per sampling interval (default 16)")
    parser.add_argument("--oversample", type=int, help="internal spatial refinement factor (default 1)")
    parser.add_argument("--out-csv", help="path for the per-member record table")
    parser.add_argument("--out-json", help="path for the aggregate summary")
    parser.add_argument("--save-snapshots", dest="snapshot_dir", metavar="DIR",
                        help="directory for per-member snapshot CSV files")
    return parser


def load_config(path) -> dict:
    with open(path) as fh:
        data = json.load(fh)
    unknown = set(data) - _CONFIG_KEYS
    if unknown:
        raise ConfigurationError(f"unknown config keys in {path}: {sorted(unknown)}")
    return data


def config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    settings: dict = {}
    if args.config:
        settings.update(load_config(args.config))
    for key in _CONFIG_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            settings[key] = value
    if "tol_values" in settings:
        settings["tol_values"] = tuple(settings["tol_values"])
    if settings.get("level_values") is not None:
        settings["level_values"] = tuple(settings["level_values"])
    return ExperimentConfig(**settings)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = config_from_args(args)
    except (ConfigurationError, OSError, json.JSONDecodeError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    sink = None
    if config.snapshot_dir:
        os.makedirs(config.snapshot_dir, exist_ok=True)

        def sink(member, series):
            write_snapshots(os.path.join(config.snapshot_dir, f"member_{member:03d}.csv"), series)

    try:
        records = run_experiment(config, snapshot_sink=sink)
    except ConfigurationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    if config.out_csv:
        emit_csv(records, config.out_csv)
        print(f"wrote {len(records)} records to {config.out_csv}")
    if config.out_json:
        report = write_summary(records, config.out_json)
        print(f"wrote summary to {config.out_json}")
    else:
        report = None

    succeeded = modes_with_success(records)
    for mode in config.run_modes:
        n_ok = sum(1 for r in records if r.mode == mode and r.ok)
        print(f"mode {mode}: {n_ok}/{config.members} members succeeded")
    if report is not None and report.get("win_rate") is not None:
        print(f"multiscale win rate on reconstruction error: {report['win_rate']:.3f}")

    return 0 if all(mode in succeeded for mode in config.run_modes) else 1


if __name__ == "__main__":
    sys.exit(main())
