"""Observable time series assembled from snapshot data.

Two kinds of rows feed the mode decomposition: canonical observables (the
raw field value at each grid point) and multiscale norm observables (per
wavelet scale, the quadrature-weighted L2 energies and octave-weighted
coefficient norms of the field).  Rows are grouped in labelled blocks so the
canonical part can be addressed after stacking.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError, StructuralError
from .solver import SnapshotSeries
from .wavelet import DEFAULT_FAMILY, WaveletFamily, besov_blocks, dwt_periodic, get_family, scale_energies

OBSERVABLE_SCHEMA = "mdmd-observables-v1"

CANONICAL = "canonical"
SCALE_ENERGY = "g2"

MODES = ("dmd", "mdmd")

DEFAULT_BESOV_SPECS = ((1.0, 2.0, 2.0), (0.0, 2.0, 4.0))


def besov_label(alpha: float, p: float, q: float) -> str:
    def fmt(v: float) -> str:
        return str(int(v)) if float(v).is_integer() else repr(float(v))

    return f"besov_{fmt(alpha)}_{fmt(p)}_{fmt(q)}"


@dataclass(frozen=True)
class ObservableConfig:
    """Which observable stack to build.

    ``mode`` is ``"dmd"`` (canonical rows only) or ``"mdmd"`` (canonical rows
    plus one multiscale group per entry of ``besov_specs`` and the plain
    energy group).  With the default two Besov specs the stack has
    ``num_points + 3 * (num_levels + 1)`` rows.
    """

    mode: str = "mdmd"
    num_levels: int = 7
    family: WaveletFamily = field(default_factory=lambda: get_family(DEFAULT_FAMILY))
    besov_specs: tuple[tuple[float, float, float], ...] = DEFAULT_BESOV_SPECS

    def __post_init__(self):
        if self.mode not in MODES:
            raise ConfigurationError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.num_levels < 1:
            raise ConfigurationError("num_levels must be >= 1")

    def observable_count(self, num_points: int) -> int:
        if self.mode == "dmd":
            return num_points
        return num_points + (1 + len(self.besov_specs)) * (self.num_levels + 1)


@dataclass
class ObservableMatrix:
    """Stacked observable trajectories; column ``n`` is the sample at ``t_n``.

    ``blocks`` is the ordered list of ``(label, row_slice)`` pairs making up
    the rows, e.g. ``[("canonical", ...), ("g2", ...), ("besov_1_2_2", ...),
    ("besov_0_2_4", ...)]``.
    """

    values: np.ndarray
    blocks: list[tuple[str, slice]]
    times: np.ndarray

    def __post_init__(self):
        if self.values.ndim != 2 or self.values.shape[1] != len(self.times):
            raise StructuralError("observable matrix does not match the time axis")
        covered = sum(b.stop - b.start for _, b in self.blocks)
        if covered != self.values.shape[0]:
            raise StructuralError("block slices do not cover the matrix rows")

    @property
    def labels(self) -> list[str]:
        return [name for name, _ in self.blocks]

    def block(self, label: str) -> np.ndarray:
        for name, rows in self.blocks:
            if name == label:
                return self.values[rows]
        raise StructuralError(f"no observable block labelled {label!r}")

    def block_slice(self, label: str) -> slice:
        for name, rows in self.blocks:
            if name == label:
                return rows
        raise StructuralError(f"no observable block labelled {label!r}")


def canonical_observables(series: SnapshotSeries) -> ObservableMatrix:
    """Field values at every grid point: row ``l``, column ``n`` is
    ``u(x_l, t_n)``."""
    if series.values.shape[1] == 0:
        raise StructuralError("snapshot series is empty")
    values = series.values.copy()
    return ObservableMatrix(values, [(CANONICAL, slice(0, values.shape[0]))], series.times.copy())


def multiscale_observables(series: SnapshotSeries, config: ObservableConfig) -> ObservableMatrix:
    """Per-scale norm observables of each snapshot.

    For every time column the field is decomposed once; the rows are the
    quadrature-weighted scale energies (``dx`` times the per-block squared
    L2 sums, so they total the discrete squared L2 norm) followed by one
    octave-weighted block group per ``(alpha, p, q)`` spec, weighted by
    ``dx^(q/2)`` so the values discretize the corresponding continuum
    seminorms.  All rows are real and non-negative, stored with zero
    imaginary part.
    """
    n_levels = config.num_levels
    dx = series.grid.dx
    n_cols = series.values.shape[1]
    group = n_levels + 1
    n_rows = (1 + len(config.besov_specs)) * group
    values = np.zeros((n_rows, n_cols), dtype=np.complex128)
    for n in range(n_cols):
        coeffs = dwt_periodic(series.values[:, n], config.family, n_levels)
        values[0:group, n] = dx * scale_energies(coeffs)
        for i, (alpha, p, q) in enumerate(config.besov_specs):
            rows = slice((1 + i) * group, (2 + i) * group)
            values[rows, n] = dx ** (q / 2.0) * besov_blocks(coeffs, alpha, p, q)
    blocks = [(SCALE_ENERGY, slice(0, group))]
    for i, (alpha, p, q) in enumerate(config.besov_specs):
        blocks.append((besov_label(alpha, p, q), slice((1 + i) * group, (2 + i) * group)))
    return ObservableMatrix(values, blocks, series.times.copy())


def stack(config: ObservableConfig, series: SnapshotSeries) -> ObservableMatrix:
    """Assemble the observable matrix for the requested mode.

    ``"dmd"`` keeps the canonical rows only; ``"mdmd"`` stacks the canonical
    rows on top of the multiscale groups, preserving block labels.
    """
    canonical = canonical_observables(series)
    if config.mode == "dmd":
        return canonical
    multi = multiscale_observables(series, config)
    values = np.vstack([canonical.values, multi.values])
    offset = canonical.values.shape[0]
    blocks = list(canonical.blocks)
    for name, rows in multi.blocks:
        blocks.append((name, slice(rows.start + offset, rows.stop + offset)))
    return ObservableMatrix(values, blocks, series.times.copy())


def write_observables(path, matrix: ObservableMatrix) -> None:
    """Write an observable matrix as versioned columnar CSV.

    Line 1: ``mdmd-observables-v1,M=...,N_T=...,dt=...``.  Line 2 is the
    block-label row (``label:rows`` comma separated, in stacking order).
    Line 3 names the columns (``t`` then interleaved ``re_i,im_i`` per
    observable row); the remaining lines carry one time sample each.
    """
    n_rows, n_cols = matrix.values.shape
    dt = float(matrix.times[1] - matrix.times[0]) if n_cols > 1 else 0.0
    with open(path, "w") as fh:
        fh.write(f"{OBSERVABLE_SCHEMA},M={n_rows},N_T={n_cols - 1},dt={dt!r}\n")
        fh.write(",".join(f"{name}:{rows.stop - rows.start}" for name, rows in matrix.blocks) + "\n")
        columns = ["t"]
        for i in range(n_rows):
            columns += [f"re_{i}", f"im_{i}"]
        fh.write(",".join(columns) + "\n")
        for n in range(n_cols):
            col = matrix.values[:, n]
            row = [repr(float(matrix.times[n]))]
            for v in col:
                row += [repr(float(v.real)), repr(float(v.imag))]
            fh.write(",".join(row) + "\n")


def read_observables(path) -> ObservableMatrix:
    """Read a matrix written by :func:`write_observables` (exact round trip)."""
    with open(path) as fh:
        header = fh.readline().rstrip("\n").split(",")
        if not header or header[0] != OBSERVABLE_SCHEMA:
            raise StructuralError(f"unrecognized observable file schema: {header[:1]}")
        meta = dict(item.split("=", 1) for item in header[1:])
        n_rows, n_cols = int(meta["M"]), int(meta["N_T"]) + 1
        blocks = []
        start = 0
        for part in fh.readline().rstrip("\n").split(","):
            name, count = part.rsplit(":", 1)
            blocks.append((name, slice(start, start + int(count))))
            start += int(count)
        fh.readline()  # column names
        times = np.empty(n_cols)
        values = np.empty((n_rows, n_cols), dtype=np.complex128)
        for n in range(n_cols):
            parts = fh.readline().rstrip("\n").split(",")
            if len(parts) != 1 + 2 * n_rows:
                raise StructuralError(f"observable row {n} has {len(parts)} fields")
            times[n] = float(parts[0])
            flat = np.array(parts[1:], dtype=np.float64)
            values[:, n] = flat[0::2] + 1j * flat[1::2]
    return ObservableMatrix(values, blocks, times)
