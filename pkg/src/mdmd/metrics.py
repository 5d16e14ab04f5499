"""Error functionals and the (truncation, levels) parameter sweep.

Two criteria grade a fitted decomposition: how well it reconstructs the
canonical observables at the final sampled time, and how close the retained
eigenvalues sit to the unit circle (the signature of the underlying
Hamiltonian flow).  A weighted sum of the two is minimized by sweeping the
truncation tolerance and, for multiscale stacks, the decomposition depth.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dmd import TruncationRule, _fit_truncated, reconstruct, split_snapshots, truncation_rank
from .errors import ConfigurationError, DegenerateDataError, NumericalError, StructuralError
from .observables import CANONICAL, DEFAULT_BESOV_SPECS, ObservableConfig, ObservableMatrix, stack
from .solver import SnapshotSeries
from .wavelet import DEFAULT_FAMILY, WaveletFamily, get_family

SWEEP_CSV_HEADER = "T_l,N_lvl,E_rc,E_sp,E,rank,status"

# placeholder level count for canonical-only sweeps (no wavelet decomposition)
NO_LEVELS = 0


@dataclass(frozen=True)
class ErrorReport:
    """Errors of one fitted configuration.

    ``total_error == recon_error + weight * spectral_error`` exactly.
    ``num_levels`` is ``NO_LEVELS`` (0) when the stack had no multiscale
    rows.  Failed evaluations carry NaN errors and an ``error:`` status.
    """

    tol: int
    num_levels: int
    recon_error: float
    spectral_error: float
    total_error: float
    weight: float
    rank: int
    status: str = "ok"

    @property
    def ok(self) -> bool:
        return self.status == "ok"


@dataclass(frozen=True)
class SweepGrid:
    """Integer ranges swept: truncation tolerances and decomposition depths."""

    tol_values: tuple[int, ...] = tuple(range(2, 11))
    level_values: tuple[int, ...] = tuple(range(1, 8))

    def __post_init__(self):
        if not self.tol_values or not self.level_values:
            raise ConfigurationError("sweep grid must contain at least one point per axis")

    @classmethod
    def for_grid_size(cls, num_points: int, tol_values: tuple[int, ...] | None = None) -> "SweepGrid":
        """Default ranges: tolerances 2..10, depths 1..log2(num_points)-1."""
        max_levels = int(np.log2(num_points)) - 1
        return cls(
            tol_values=tuple(tol_values) if tol_values else tuple(range(2, 11)),
            level_values=tuple(range(1, max_levels + 1)),
        )


@dataclass
class SweepResult:
    """Full error table plus the arg-min entry (ties broken by smallest
    tolerance, then smallest level count)."""

    table: list[ErrorReport]
    best: ErrorReport


def reconstruction_error(truth: ObservableMatrix, result, t_final: float | None = None) -> float:
    """L2 mismatch of the canonical rows at the final sampled time.

    Compares the truth's last column (canonical block only) against the
    fitted expansion evaluated at that time.
    """
    rows = truth.block_slice(CANONICAL)
    if t_final is None:
        t_final = float(truth.times[-1])
    predicted = reconstruct(result, t_final)[rows]
    actual = truth.values[rows, -1]
    return float(np.linalg.norm(predicted - actual))


def spectral_error(result) -> float:
    """RMS distance of retained eigenvalue magnitudes from the unit circle.

    Structurally zero eigenvalues carry no magnitude information (they mark
    the operator's null directions) and are excluded; the divisor is the
    number of nonzero retained eigenvalues.
    """
    mu = result.eigenvalues[result.eigenvalues != 0]
    if mu.size == 0:
        return 0.0
    return float(np.sqrt(np.mean((np.abs(mu) - 1.0) ** 2)))


def combined_error(recon: float, spectral: float, weight: float) -> float:
    """Weighted criterion ``recon + weight * spectral`` with ``0 <= weight <= 2``."""
    if not 0.0 <= weight <= 2.0:
        raise ConfigurationError(f"weight must lie in [0, 2], got {weight}")
    return recon + weight * spectral


def _failed_reports(
    tol_values: tuple[int, ...], num_levels: int, weight: float, message: str
) -> list[ErrorReport]:
    nan = float("nan")
    return [
        ErrorReport(
            tol=tol,
            num_levels=num_levels,
            recon_error=nan,
            spectral_error=nan,
            total_error=nan,
            weight=weight,
            rank=0,
            status=f"error: {message}",
        )
        for tol in tol_values
    ]


def _evaluate_stack(
    observables: ObservableMatrix,
    tol_values: tuple[int, ...],
    num_levels: int,
    weight: float,
    dt: float,
) -> list[ErrorReport]:
    """Grade every truncation tolerance against one observable stack.

    The past-matrix SVD is shared across tolerances; each tolerance only
    changes the retained rank, so the per-point results are identical to
    independent fits.
    """
    pair = split_snapshots(observables)
    u, s, vh = np.linalg.svd(pair.past, full_matrices=False)
    reports = []
    for tol in tol_values:
        try:
            rank = truncation_rank(s, TruncationRule(tol))
            result = _fit_truncated(u, s, vh, pair.future, rank, dt, pair.past[:, 0])
            e_rc = reconstruction_error(observables, result)
            e_sp = spectral_error(result)
            reports.append(
                ErrorReport(
                    tol=tol,
                    num_levels=num_levels,
                    recon_error=e_rc,
                    spectral_error=e_sp,
                    total_error=combined_error(e_rc, e_sp, weight),
                    weight=weight,
                    rank=rank,
                    status="ok",
                )
            )
        except (DegenerateDataError, NumericalError, np.linalg.LinAlgError) as exc:
            reports.extend(_failed_reports((tol,), num_levels, weight, str(exc)))
    return reports


def sweep(
    series: SnapshotSeries,
    mode: str,
    grid: SweepGrid,
    weight: float,
    family: WaveletFamily | None = None,
    besov_specs: tuple[tuple[float, float, float], ...] = DEFAULT_BESOV_SPECS,
) -> SweepResult:
    """Minimize the weighted error over the parameter grid.

    In ``"dmd"`` mode only the truncation tolerance is swept (the canonical
    stack has no decomposition depth, recorded as level count 0); in
    ``"mdmd"`` mode every (tolerance, depth) pair is graded.  Failures at
    individual grid points are recorded in the table with an ``error:``
    status; the sweep itself fails only if no point succeeds.  The arg-min
    is deterministic: smallest total error, ties broken by smallest
    tolerance then smallest depth.
    """
    if weight < 0 or weight > 2:
        raise ConfigurationError(f"weight must lie in [0, 2], got {weight}")
    if family is None:
        family = get_family(DEFAULT_FAMILY)
    dt = series.dt
    table: list[ErrorReport] = []
    if mode == "dmd":
        stacks = [(NO_LEVELS, ObservableConfig(mode="dmd"))]
    elif mode == "mdmd":
        stacks = [
            (levels, ObservableConfig(mode="mdmd", num_levels=levels, family=family, besov_specs=besov_specs))
            for levels in grid.level_values
        ]
    else:
        raise ConfigurationError(f"mode must be 'dmd' or 'mdmd', got {mode!r}")
    for levels, config in stacks:
        try:
            observables = stack(config, series)
            table.extend(_evaluate_stack(observables, grid.tol_values, levels, weight, dt))
        except (NumericalError, np.linalg.LinAlgError) as exc:
            # an SVD that fails to converge takes the whole stack down; the
            # grid points it covered become failed entries, not an abort
            table.extend(_failed_reports(grid.tol_values, levels, weight, str(exc)))

    successes = [r for r in table if r.ok]
    if not successes:
        raise NumericalError("every sweep grid point failed")
    best = min(successes, key=lambda r: (r.total_error, r.tol, r.num_levels))
    return SweepResult(table=table, best=best)


def write_sweep_csv(path, result: SweepResult) -> None:
    """Write the sweep table as CSV with columns
    ``T_l,N_lvl,E_rc,E_sp,E,rank,status``."""
    with open(path, "w") as fh:
        fh.write(SWEEP_CSV_HEADER + "\n")
        for r in result.table:
            fields = [
                str(r.tol),
                str(r.num_levels),
                repr(r.recon_error),
                repr(r.spectral_error),
                repr(r.total_error),
                str(r.rank),
                r.status,
            ]
            fh.write(",".join(fields) + "\n")
