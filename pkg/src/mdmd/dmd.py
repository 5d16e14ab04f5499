"""Truncated-SVD dynamic mode decomposition.

Given past/future snapshot matrices the decomposition approximates the
linear operator advancing the observables by one sampling interval: the past
matrix is reduced by an SVD truncated at a relative singular-value cutoff,
the operator is projected onto the retained left singular directions, and
its eigenpairs are lifted back to observable space.  Discrete eigenvalues
``mu`` convert to continuous rates ``log(mu)/dt`` on the principal branch.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError, DegenerateDataError, NumericalError, StructuralError

DMD_SCHEMA = "mdmd-dmd-v1"


@dataclass
class SnapshotPair:
    """Aligned past/future observable matrices (columns shifted by one)."""

    past: np.ndarray
    future: np.ndarray

    def __post_init__(self):
        if self.past.shape != self.future.shape:
            raise StructuralError("past and future matrices must have equal shapes")
        if self.past.ndim != 2 or self.past.shape[1] < 1:
            raise StructuralError("snapshot pair needs at least one column")


@dataclass(frozen=True)
class TruncationRule:
    """Relative singular-value cutoff: keep directions whose ratio to the
    leading singular value exceeds ``10**-tol`` (strict inequality)."""

    tol: int

    def __post_init__(self):
        if int(self.tol) != self.tol or self.tol < 0:
            raise ConfigurationError("truncation tolerance must be a non-negative integer")


@dataclass
class DMDResult:
    """Retained eigenvalues, unit-norm modes, and fitted amplitudes.

    ``modes`` is ``M x rank`` with unit 2-norm columns; ``amplitudes`` solves
    the least-squares match to the initial observable column.
    """

    eigenvalues: np.ndarray
    modes: np.ndarray
    amplitudes: np.ndarray
    rank: int
    dt: float
    singular_values: np.ndarray = field(default=None, repr=False)

    @property
    def continuous_eigenvalues(self) -> np.ndarray:
        """Principal-branch rates ``log(mu)/dt`` (``-inf`` for ``mu == 0``)."""
        with np.errstate(divide="ignore"):
            return np.log(self.eigenvalues) / self.dt

    @property
    def num_zero_eigenvalues(self) -> int:
        return int(np.count_nonzero(self.eigenvalues == 0))


def split_snapshots(observables) -> SnapshotPair:
    """Drop the last column for the past matrix, the first for the future.

    Accepts an :class:`~mdmd.observables.ObservableMatrix` or a plain
    2-D array; raises for fewer than two columns.
    """
    values = np.asarray(getattr(observables, "values", observables))
    if values.ndim != 2 or values.shape[1] < 2:
        raise StructuralError("need at least two snapshot columns to form a pair")
    return SnapshotPair(values[:, :-1], values[:, 1:])


def truncation_rank(singular_values: np.ndarray, rule: TruncationRule) -> int:
    """Largest index whose singular value passes the relative cutoff.

    The returned rank is the count of entries ``d_i`` (descending) with
    ``log10(d_i / d_1) > -tol``, and is at least 1.
    """
    d = np.asarray(singular_values, dtype=np.float64)
    if d.size == 0 or d[0] <= 0:
        raise DegenerateDataError("all singular values vanish; data carries no signal")
    kept = int(np.sum(d > d[0] * 10.0 ** (-float(rule.tol))))
    return max(kept, 1)


def _fit_truncated(
    u: np.ndarray,
    s: np.ndarray,
    vh: np.ndarray,
    future: np.ndarray,
    rank: int,
    dt: float,
    first_column: np.ndarray,
) -> DMDResult:
    """Eigendecompose the rank-``rank`` projected operator and lift modes."""
    ur = u[:, :rank]
    vr = vh[:rank].conj().T
    projected = (ur.conj().T @ future @ vr) / s[:rank]
    try:
        eigenvalues, small_vectors = np.linalg.eig(projected)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(
            f"eigendecomposition failed on the {rank}x{rank} projected operator: {exc}"
        ) from exc
    modes = ur @ small_vectors
    norms = np.linalg.norm(modes, axis=0)
    norms[norms == 0] = 1.0
    modes = modes / norms
    amplitudes, *_ = np.linalg.lstsq(modes, first_column, rcond=None)
    return DMDResult(eigenvalues, modes, amplitudes, rank, dt, singular_values=s.copy())


def fit(pair: SnapshotPair, rule: TruncationRule, dt: float) -> DMDResult:
    """Fit the decomposition from a snapshot pair.

    The past matrix is factored once (thin SVD); the truncation rule picks
    the retained rank; the projected operator's eigenpairs give the
    eigenvalues and, lifted through the left singular vectors, the modes.
    Amplitudes are the least-squares fit of the modes to the first past
    column, so reconstruction at ``t = 0`` reproduces the initial
    observables up to projection error.
    """
    u, s, vh = np.linalg.svd(pair.past, full_matrices=False)
    rank = truncation_rank(s, rule)
    return _fit_truncated(u, s, vh, pair.future, rank, dt, pair.past[:, 0])


def reconstruct(result: DMDResult, t: float) -> np.ndarray:
    """Evaluate the fitted expansion ``sum_j b_j Phi_j exp(t log(mu_j)/dt)``.

    Modes with ``mu == 0`` have no principal logarithm and are excluded from
    the sum (a warning records how many were skipped).
    """
    active = result.eigenvalues != 0
    skipped = int(np.count_nonzero(~active))
    if skipped:
        warnings.warn(
            f"excluded {skipped} zero eigenvalue(s) from reconstruction", stacklevel=2
        )
    growth = np.exp(np.log(result.eigenvalues[active]) * (t / result.dt))
    return result.modes[:, active] @ (result.amplitudes[active] * growth)


def write_dmd_result(path, result: DMDResult) -> None:
    """Write a fitted decomposition as a documented text report.

    Line 1: ``mdmd-dmd-v1,rank=...,M=...,dt=...``.  Line 2 names the
    per-mode columns ``re_mu,im_mu,abs_mu,re_lambda,im_lambda,abs_b``; one
    line per retained mode follows (``lambda`` is the principal-branch
    continuous rate; ``-inf`` marks a zero eigenvalue).  After a ``modes``
    marker the mode matrix follows in columnar form: one line per observable
    row with interleaved ``re,im`` entries of each mode.
    """
    lam = result.continuous_eigenvalues
    with open(path, "w") as fh:
        fh.write(f"{DMD_SCHEMA},rank={result.rank},M={result.modes.shape[0]},dt={result.dt!r}\n")
        fh.write("re_mu,im_mu,abs_mu,re_lambda,im_lambda,abs_b\n")
        for j in range(result.rank):
            mu = result.eigenvalues[j]
            fields = [
                repr(float(mu.real)),
                repr(float(mu.imag)),
                repr(float(abs(mu))),
                repr(float(lam[j].real)),
                repr(float(lam[j].imag)),
                repr(float(abs(result.amplitudes[j]))),
            ]
            fh.write(",".join(fields) + "\n")
        fh.write("modes\n")
        for i in range(result.modes.shape[0]):
            row = []
            for j in range(result.rank):
                row += [repr(float(result.modes[i, j].real)), repr(float(result.modes[i, j].imag))]
            fh.write(",".join(row) + "\n")


def read_dmd_spectrum(path) -> np.ndarray:
    """Read back the per-mode table of :func:`write_dmd_result` as an array
    with columns (re mu, im mu, |mu|, re lambda, im lambda, |b|)."""
    with open(path) as fh:
        header = fh.readline().rstrip("\n").split(",")
        if not header or header[0] != DMD_SCHEMA:
            raise StructuralError(f"unrecognized decomposition file schema: {header[:1]}")
        meta = dict(item.split("=", 1) for item in header[1:])
        fh.readline()  # column names
        rows = [fh.readline().rstrip("\n").split(",") for _ in range(int(meta["rank"]))]
    return np.array(rows, dtype=np.float64)
