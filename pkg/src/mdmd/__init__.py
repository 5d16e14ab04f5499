"""Wavelet-multiscale observable enhancement of dynamic mode decomposition.

The package generates trajectories of the focusing cubic Schrödinger
equation with a pseudo-spectral integrator, augments the canonical grid
observables with per-scale wavelet energy and smoothness-weighted norm
observables, fits a truncated-SVD dynamic mode decomposition, and sweeps the
truncation/depth parameters to minimize a weighted reconstruction-plus-
spectrum error.  An ensemble harness reproduces the seeded benchmark
experiments and emits CSV/JSON plot data.
"""

from .dmd import (
    DMDResult,
    SnapshotPair,
    TruncationRule,
    fit,
    read_dmd_spectrum,
    reconstruct,
    split_snapshots,
    truncation_rank,
    write_dmd_result,
)
from .ensemble import (
    EnsembleRecord,
    ExperimentConfig,
    emit_csv,
    emit_summary,
    read_records_csv,
    run_experiment,
    write_summary,
)
from .errors import (
    BlowUpError,
    ConfigurationError,
    DegenerateDataError,
    NumericalError,
    StructuralError,
)
from .metrics import (
    ErrorReport,
    SweepGrid,
    SweepResult,
    combined_error,
    reconstruction_error,
    spectral_error,
    sweep,
    write_sweep_csv,
)
from .observables import (
    ObservableConfig,
    ObservableMatrix,
    canonical_observables,
    multiscale_observables,
    read_observables,
    stack,
    write_observables,
)
from .solver import (
    FieldState,
    GridConfig,
    InitialConditionSpec,
    SnapshotSeries,
    TimeGrid,
    build_grid,
    energy,
    hamiltonian,
    make_initial_condition,
    read_snapshots,
    simulate,
    soliton,
    step,
    write_snapshots,
)
from .wavelet import (
    DEFAULT_FAMILY,
    MRACoefficients,
    WaveletFamily,
    besov_blocks,
    builtin_families,
    dwt_periodic,
    get_family,
    idwt_periodic,
    load_filter_table,
    scale_energies,
)

__version__ = "0.1.0"
