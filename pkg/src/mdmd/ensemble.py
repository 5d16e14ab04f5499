"""Seeded ensemble experiments with CSV/JSON result emission.

Each ensemble member integrates one noise realization (seed = base seed +
member index), runs the parameter sweep for the requested observable modes,
and records the optimum.  In ``"both"`` mode the two sweeps share the same
trajectory so the comparison isolates the observable choice.  Blow-ups and
fit failures become status-carrying records rather than aborts: at strong
perturbations a breakdown is part of the measured data.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import BlowUpError, ConfigurationError, NumericalError, StructuralError
from .metrics import SweepGrid, sweep
from .solver import GridConfig, InitialConditionSpec, TimeGrid, build_grid, simulate
from .wavelet import DEFAULT_FAMILY, get_family

ENSEMBLE_SCHEMA = "mdmd-ensemble-v1"
SUMMARY_SCHEMA = "mdmd-summary-v1"

CSV_COLUMNS = ("member", "mode", "seed", "E_rc", "E_sp", "E", "best_T_l", "best_N_lvl", "rank", "status")

RUN_MODES = ("dmd", "mdmd", "both")


@dataclass
class ExperimentConfig:
    """Full description of one ensemble experiment (benchmark defaults)."""

    epsilon: float = 0.05
    weight: float = 0.01
    mode: str = "both"
    members: int = 16
    base_seed: int = 0
    half_length: float = 32.0
    num_points: int = 256
    dt: float = 0.1
    t_final: float = 30.0
    x_secondary: float = 5.0
    wavelet: str = DEFAULT_FAMILY
    tol_values: tuple[int, ...] = tuple(range(2, 11))
    level_values: tuple[int, ...] | None = None
    substeps: int = 16
    oversample: int = 1
    out_csv: str | None = None
    out_json: str | None = None
    snapshot_dir: str | None = None

    def __post_init__(self):
        if self.mode not in RUN_MODES:
            raise ConfigurationError(f"mode must be one of {RUN_MODES}, got {self.mode!r}")
        if self.members < 1:
            raise ConfigurationError("ensemble needs at least one member")

    @property
    def run_modes(self) -> tuple[str, ...]:
        return ("dmd", "mdmd") if self.mode == "both" else (self.mode,)

    def grid(self) -> GridConfig:
        return build_grid(self.half_length, self.num_points)

    def timegrid(self) -> TimeGrid:
        return TimeGrid(self.dt, self.t_final)

    def sweep_grid(self) -> SweepGrid:
        base = SweepGrid.for_grid_size(self.num_points, tol_values=self.tol_values)
        if self.level_values is not None:
            base = SweepGrid(tol_values=base.tol_values, level_values=tuple(self.level_values))
        return base


@dataclass(frozen=True)
class EnsembleRecord:
    """Sweep optimum of one (member, mode) run; NaN errors mark failures."""

    member: int
    mode: str
    seed: int
    recon_error: float
    spectral_error: float
    total_error: float
    best_tol: int
    best_levels: int
    rank: int
    status: str = "ok"

    @property
    def ok(self) -> bool:
        return self.status == "ok"


def _failed_record(member: int, mode: str, seed: int, status: str) -> EnsembleRecord:
    nan = float("nan")
    return EnsembleRecord(member, mode, seed, nan, nan, nan, 0, 0, 0, status)


def run_experiment(config: ExperimentConfig, snapshot_sink=None) -> list[EnsembleRecord]:
    """Run every member and collect one record per (member, mode).

    Fully determined by the config (member seeds are ``base_seed + index``).
    ``snapshot_sink``, if given, is called with each member's simulated
    series (for optional persistence).  Per-member failures are recorded and
    do not abort the ensemble.
    """
    grid = config.grid()
    timegrid = config.timegrid()
    sweep_grid = config.sweep_grid()
    family = get_family(config.wavelet)
    records: list[EnsembleRecord] = []
    for member in range(config.members):
        seed = config.base_seed + member
        ic = InitialConditionSpec(epsilon=config.epsilon, x_secondary=config.x_secondary, seed=seed)
        try:
            series = simulate(
                ic, grid, timegrid, substeps=config.substeps, oversample=config.oversample
            )
        except BlowUpError as exc:
            for mode in config.run_modes:
                records.append(_failed_record(member, mode, seed, f"blowup: t={exc.time:.6g}"))
            continue
        if snapshot_sink is not None:
            snapshot_sink(member, series)
        for mode in config.run_modes:
            try:
                best = sweep(series, mode, sweep_grid, config.weight, family=family).best
            except NumericalError as exc:
                records.append(_failed_record(member, mode, seed, f"error: {exc}"))
                continue
            records.append(
                EnsembleRecord(
                    member=member,
                    mode=mode,
                    seed=seed,
                    recon_error=best.recon_error,
                    spectral_error=best.spectral_error,
                    total_error=best.total_error,
                    best_tol=best.tol,
                    best_levels=best.num_levels,
                    rank=best.rank,
                    status="ok",
                )
            )
    return records


def emit_csv(records: list[EnsembleRecord], path) -> None:
    """Write ensemble records as CSV.

    The header row starts with the schema version token followed by the
    column names (``member,mode,seed,E_rc,E_sp,E,best_T_l,best_N_lvl,rank,
    status``); each data row carries one record in that column order with
    full-precision floats.  Output bytes depend only on the records.
    """
    if not records:
        raise StructuralError("no records to write")
    with open(path, "w") as fh:
        fh.write(",".join((ENSEMBLE_SCHEMA,) + CSV_COLUMNS) + "\n")
        for r in records:
            fields = [
                str(r.member),
                r.mode,
                str(r.seed),
                repr(float(r.recon_error)),
                repr(float(r.spectral_error)),
                repr(float(r.total_error)),
                str(r.best_tol),
                str(r.best_levels),
                str(r.rank),
                r.status,
            ]
            fh.write(",".join(fields) + "\n")


def read_records_csv(path) -> list[EnsembleRecord]:
    """Read back an ensemble CSV written by :func:`emit_csv` exactly."""
    records = []
    with open(path) as fh:
        header = fh.readline().rstrip("\n").split(",")
        if not header or header[0] != ENSEMBLE_SCHEMA:
            raise StructuralError(f"unrecognized ensemble file schema: {header[:1]}")
        if tuple(header[1:]) != CSV_COLUMNS:
            raise StructuralError("ensemble CSV column set does not match the schema")
        for line in fh:
            parts = line.rstrip("\n").split(",", maxsplit=9)
            if len(parts) != 10:
                raise StructuralError(f"malformed ensemble CSV row: {line!r}")
            records.append(
                EnsembleRecord(
                    member=int(parts[0]),
                    mode=parts[1],
                    seed=int(parts[2]),
                    recon_error=float(parts[3]),
                    spectral_error=float(parts[4]),
                    total_error=float(parts[5]),
                    best_tol=int(parts[6]),
                    best_levels=int(parts[7]),
                    rank=int(parts[8]),
                    status=parts[9],
                )
            )
    return records


def _mode_stats(mode_records: list[EnsembleRecord]) -> dict:
    ok = [r for r in mode_records if r.ok]
    stats: dict = {"members": len(mode_records), "failures": len(mode_records) - len(ok)}
    for name, getter in (("E_rc", lambda r: r.recon_error), ("E_sp", lambda r: r.spectral_error)):
        values = [getter(r) for r in ok]
        if values:
            stats[name] = {
                "median": float(np.median(values)),
                "min": float(min(values)),
                "max": float(max(values)),
            }
        else:
            stats[name] = None
    return stats


def emit_summary(records: list[EnsembleRecord]) -> dict:
    """Aggregate records into a JSON-ready report.

    Per mode: median/min/max of the reconstruction and spectral errors plus
    failure counts.  When both modes are present the report adds the
    member-paired win rate: the fraction of members where the multiscale run
    matched or beat the canonical run on reconstruction error (ties and
    opponent failures count as wins; pairs where both runs failed are
    excluded).
    """
    if not records:
        raise StructuralError("no records to summarize")
    by_mode: dict[str, dict[int, EnsembleRecord]] = {}
    for r in records:
        by_mode.setdefault(r.mode, {})[r.member] = r
    report: dict = {"schema": SUMMARY_SCHEMA, "modes": {}}
    for mode, members in sorted(by_mode.items()):
        report["modes"][mode] = _mode_stats(list(members.values()))
    if "dmd" in by_mode and "mdmd" in by_mode:
        wins = 0
        pairs = 0
        for member, multi in by_mode["mdmd"].items():
            plain = by_mode["dmd"].get(member)
            if plain is None or (not multi.ok and not plain.ok):
                continue
            pairs += 1
            if multi.ok and (not plain.ok or multi.recon_error <= plain.recon_error):
                wins += 1
        report["win_rate"] = (wins / pairs) if pairs else None
        report["paired_members"] = pairs
    return report


def write_summary(records: list[EnsembleRecord], path) -> dict:
    """Emit the summary report as JSON; returns the report dict."""
    report = emit_summary(records)
    with open(path, "w") as fh:
        json.dump(report, fh, indent=2, sort_keys=True, allow_nan=True)
        fh.write("\n")
    return report


def modes_with_success(records: list[EnsembleRecord]) -> set[str]:
    return {r.mode for r in records if r.ok}
