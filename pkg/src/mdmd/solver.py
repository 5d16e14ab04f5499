"""Pseudo-spectral integrator for the focusing cubic Schrödinger equation.

The equation ``i u_t + u_xx + |u|^2 u = 0`` is discretized on a periodic
interval ``[-L, L)`` with a Fourier collocation grid.  The linear dispersion
is propagated exactly in Fourier space through an integrating factor, and the
cubic nonlinearity is advanced with the classical fourth-order Runge-Kutta
scheme in the transformed variable.

The module also provides the randomized two-peak initial condition used by
the benchmark experiments, conservation diagnostics (squared L2 norm and
Hamiltonian), and a columnar CSV format so runs can be replayed without
re-simulation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import BlowUpError, ConfigurationError, StructuralError

SNAPSHOT_SCHEMA = "mdmd-snapshots-v1"


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


@dataclass
class GridConfig:
    """Periodic spatial grid on ``[-L, L)`` with ``K`` collocation points.

    ``x[l] = -L + l*dx`` with ``dx = 2L/K``, and the resolved wavenumbers are
    ``k[m] = -pi/dx + m*dk`` with ``dk = pi/L``.  ``wavenumbers`` is that
    monotonic ordering; ``wavenumbers_fft`` carries the same values in FFT
    layout for spectral products.
    """

    half_length: float
    num_points: int
    dx: float = field(init=False, repr=False)
    dk: float = field(init=False, repr=False)
    x: np.ndarray = field(init=False, repr=False)
    wavenumbers: np.ndarray = field(init=False, repr=False)
    wavenumbers_fft: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.half_length <= 0:
            raise ConfigurationError("grid half-length must be positive")
        if not _is_power_of_two(self.num_points) or self.num_points < 8:
            raise ConfigurationError(
                f"grid size must be a power of two >= 8, got {self.num_points}"
            )
        L, K = self.half_length, self.num_points
        self.dx = 2.0 * L / K
        self.dk = np.pi / L
        self.x = -L + self.dx * np.arange(K)
        self.wavenumbers = -np.pi / self.dx + self.dk * np.arange(K)
        self.wavenumbers_fft = 2.0 * np.pi * np.fft.fftfreq(K, d=self.dx)


def build_grid(half_length: float, num_points: int) -> GridConfig:
    """Construct the periodic collocation grid, validating its invariants."""
    return GridConfig(half_length, num_points)


@dataclass
class TimeGrid:
    """Uniform sampling times ``t_n = n*dt`` for ``n = 0..num_steps``."""

    dt: float
    t_final: float
    num_steps: int = field(init=False)

    def __post_init__(self):
        if self.dt <= 0 or self.t_final <= 0:
            raise ConfigurationError("time step and final time must be positive")
        self.num_steps = int(round(self.t_final / self.dt))
        if self.num_steps < 1:
            raise ConfigurationError("time grid must contain at least one step")

    @property
    def times(self) -> np.ndarray:
        return self.dt * np.arange(self.num_steps + 1)


@dataclass(frozen=True)
class InitialConditionSpec:
    """Two-peak profile with seeded broadband perturbation.

    ``u(x, 0) = sqrt(2) (sech(x) + epsilon sech(x - x_secondary))`` plus an
    ``epsilon``-scaled random Fourier background (see
    :func:`make_initial_condition`).  ``seed`` fully determines the draw.
    """

    epsilon: float = 0.0
    x_secondary: float = 5.0
    seed: int = 0

    def __post_init__(self):
        if self.epsilon < 0:
            raise ConfigurationError("perturbation amplitude must be >= 0")


@dataclass
class FieldState:
    """Complex field samples on the grid at one instant."""

    values: np.ndarray
    time: float


@dataclass
class SnapshotSeries:
    """Trajectory sampled at uniform times; column ``n`` is the state at ``t_n``.

    ``values`` has shape ``(num_points, num_samples)``.  The generating grid
    and initial-condition spec ride along so the series can be serialized and
    replayed.
    """

    grid: GridConfig
    times: np.ndarray
    values: np.ndarray
    ic_spec: InitialConditionSpec | None = None

    def __post_init__(self):
        if self.values.ndim != 2 or self.values.shape[1] != len(self.times):
            raise StructuralError("snapshot matrix does not match the time axis")
        if len(self.times) >= 2:
            gaps = np.diff(self.times)
            if np.any(gaps <= 0) or not np.allclose(gaps, gaps[0], rtol=1e-12):
                raise StructuralError("snapshot times must increase uniformly")

    @property
    def dt(self) -> float:
        return float(self.times[1] - self.times[0])

    @property
    def states(self) -> list[FieldState]:
        return [
            FieldState(self.values[:, n].copy(), float(t))
            for n, t in enumerate(self.times)
        ]

    def state(self, n: int) -> FieldState:
        return FieldState(self.values[:, n].copy(), float(self.times[n]))


def soliton(grid: GridConfig, t: float = 0.0) -> np.ndarray:
    """Exact single-soliton profile ``sqrt(2) sech(x) e^{it}`` on the grid."""
    # same arithmetic as the initial-condition path so the two agree bitwise
    return np.sqrt(2.0) * (1.0 / np.cosh(grid.x)) * np.exp(1j * t)


def _background_coefficients(grid: GridConfig, seed: int) -> np.ndarray:
    """Seeded noise coefficients, one per resolved wavenumber of ``grid``.

    Coefficient ``m`` is ``exp(-2 k_m^2) exp(2i pi theta_m)`` where ``theta``
    is a random walk with i.i.d. uniform ``U(-dk/2, dk/2)`` increments,
    accumulated in ascending wavenumber order (the first value is itself a
    single increment).
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    theta = np.cumsum(rng.uniform(-grid.dk / 2.0, grid.dk / 2.0, size=grid.num_points))
    return np.exp(-2.0 * grid.wavenumbers**2) * np.exp(2j * np.pi * theta)


def _render_background(coeff: np.ndarray, band_grid: GridConfig, render_grid: GridConfig) -> np.ndarray:
    """Evaluate ``(dk/2pi) sum_m coeff_m exp(i k_m x)`` on ``render_grid``.

    The wavenumbers ``k_m`` are the band grid's; the render grid must share
    the same half-length and resolve at least as many points, so the band is
    a subset of its modes and the sum is evaluated exactly by inverse FFT:
    ``exp(i k_m x_l) = (-1)^p exp(2i pi p l / K)`` with signed mode index
    ``p = k_m / dk``.
    """
    Kb, Kr = band_grid.num_points, render_grid.num_points
    p = np.arange(Kb) - Kb // 2
    signs = np.where(p % 2 == 0, 1.0, -1.0)
    spectrum = np.zeros(Kr, dtype=np.complex128)
    spectrum[p + Kr // 2] = signs * coeff
    return (band_grid.dk / (2.0 * np.pi)) * Kr * np.fft.ifft(np.fft.ifftshift(spectrum))


def _initial_field(render_grid: GridConfig, band_grid: GridConfig, spec: InitialConditionSpec) -> np.ndarray:
    if not -band_grid.half_length < spec.x_secondary < band_grid.half_length:
        raise ConfigurationError(
            f"secondary peak at {spec.x_secondary} lies outside the open domain "
            f"(-{band_grid.half_length}, {band_grid.half_length})"
        )
    u = np.sqrt(2.0) * (
        1.0 / np.cosh(render_grid.x)
        + spec.epsilon / np.cosh(render_grid.x - spec.x_secondary)
    )
    u = u.astype(np.complex128)
    if spec.epsilon > 0:
        coeff = _background_coefficients(band_grid, spec.seed)
        u = u + spec.epsilon * _render_background(coeff, band_grid, render_grid)
    return u


def make_initial_condition(grid: GridConfig, spec: InitialConditionSpec) -> FieldState:
    """Sample the two-peak initial profile with its seeded noise background.

    With ``epsilon == 0`` the result is exactly the soliton profile.  For the
    same seed the result is bit-identical across calls.
    """
    return FieldState(_initial_field(grid, grid, spec), 0.0)


def _nonlinear_rate(u_hat: np.ndarray) -> np.ndarray:
    """Fourier-space rate of the cubic term: ``i |u|^2 u``."""
    u = np.fft.ifft(u_hat)
    return 1j * np.fft.fft(np.abs(u) ** 2 * u)


def _rk4_step(u_hat: np.ndarray, half: np.ndarray, full: np.ndarray, dt: float) -> np.ndarray:
    """One integrating-factor RK4 stage sweep in Fourier space.

    ``half`` and ``full`` are the exact dispersion propagators over ``dt/2``
    and ``dt``.  The RK4 stages act on the dispersion-free variable; the
    propagators move stage values between the step's reference frames.
    """
    k1 = _nonlinear_rate(u_hat)
    k2 = _nonlinear_rate(half * (u_hat + (0.5 * dt) * k1))
    k3 = _nonlinear_rate(half * u_hat + (0.5 * dt) * k2)
    k4 = _nonlinear_rate(full * u_hat + dt * (half * k3))
    return full * u_hat + (dt / 6.0) * (full * k1 + 2.0 * half * (k2 + k3) + k4)


def step(state: FieldState, grid: GridConfig, dt: float, nonlinear: bool = True) -> FieldState:
    """Advance the field by one time step of size ``dt``.

    Dispersion is exact (unitary Fourier multiplier ``exp(-i k^2 dt)``); the
    cubic term is advanced by classical RK4 in the transformed variable.
    ``nonlinear=False`` applies the dispersion propagator alone, which is
    useful for validating the integrating factor on single Fourier modes.

    Raises
    ------
    BlowUpError
        If the stepped field contains non-finite values.
    """
    ksq = grid.wavenumbers_fft**2
    half = np.exp(-1j * ksq * (0.5 * dt))
    u_hat = np.fft.fft(state.values)
    if nonlinear:
        u_hat = _rk4_step(u_hat, half, half * half, dt)
    else:
        u_hat = (half * half) * u_hat
    u_new = np.fft.ifft(u_hat)
    t_new = state.time + dt
    if not np.all(np.isfinite(u_new.view(np.float64))):
        raise BlowUpError(t_new)
    return FieldState(u_new, t_new)


def simulate(
    spec: InitialConditionSpec,
    grid: GridConfig,
    timegrid: TimeGrid,
    substeps: int = 16,
    oversample: int = 1,
) -> SnapshotSeries:
    """Integrate the initial condition and return snapshots at ``t_n = n*dt``.

    Two accuracy knobs refine the integration without changing the sampled
    data layout.  ``substeps`` splits each sampling interval into that many
    RK4 stages; ``oversample`` integrates on an internal grid with
    ``oversample * num_points`` collocation points (same half-length) and
    samples back down, which removes the bandwidth-limited radiation the
    observation grid itself would shed.  The noise band of the initial
    condition stays tied to the observation grid either way, so a given seed
    draws the same perturbation at every accuracy setting.

    At the benchmark resolution (L=32, K_T=256, dt=0.1, t_f=30) the defaults
    conserve the discrete L2 norm to ~3e-10 relative and track the exact
    soliton to ~3e-7 max norm.  Deterministic: identical inputs give
    bit-identical output.

    Raises
    ------
    BlowUpError
        Propagated from the first non-finite step, tagged with the time
        reached.
    """
    if substeps < 1 or oversample < 1:
        raise ConfigurationError("substeps and oversample must be >= 1")
    inner = grid if oversample == 1 else build_grid(grid.half_length, grid.num_points * oversample)
    h = timegrid.dt / substeps
    ksq = inner.wavenumbers_fft**2
    half = np.exp(-1j * ksq * (0.5 * h))
    full = half * half

    n_samples = timegrid.num_steps + 1
    out = np.empty((grid.num_points, n_samples), dtype=np.complex128)
    u = _initial_field(inner, grid, spec)
    out[:, 0] = u[::oversample]

    u_hat = np.fft.fft(u)
    for n in range(1, n_samples):
        for _ in range(substeps):
            u_hat = _rk4_step(u_hat, half, full, h)
        u = np.fft.ifft(u_hat)
        if not np.all(np.isfinite(u.view(np.float64))):
            raise BlowUpError(n * timegrid.dt)
        out[:, n] = u[::oversample]

    return SnapshotSeries(grid, timegrid.times, out, ic_spec=spec)


def energy(state: FieldState, grid: GridConfig) -> float:
    """Discrete squared L2 norm ``dx * sum |u|^2`` (the conserved mass)."""
    return float(grid.dx * np.sum(np.abs(state.values) ** 2))


def hamiltonian(state: FieldState, grid: GridConfig) -> float:
    """Conserved Hamiltonian ``1/2 ||u_x||_2^2 - 1/4 ||u||_4^4``.

    The derivative is spectral; both integrals use the trapezoidal/periodic
    quadrature weight ``dx``.  The focusing sign makes this the quantity the
    flow actually conserves, so it serves as a secondary drift diagnostic.
    """
    u = state.values
    ux = np.fft.ifft(1j * grid.wavenumbers_fft * np.fft.fft(u))
    kinetic = 0.5 * np.sum(np.abs(ux) ** 2)
    quartic = 0.25 * np.sum(np.abs(u) ** 4)
    return float(grid.dx * (kinetic - quartic))


def write_snapshots(path, series: SnapshotSeries) -> None:
    """Write a snapshot series as versioned CSV.

    Line 1: ``mdmd-snapshots-v1,L=...,K_T=...,dt=...,N_T=...,epsilon=...,
    x_s=...,seed=...`` (epsilon/x_s/seed are blank when the series has no
    initial-condition spec attached).  Line 2 names the columns: ``t`` then
    interleaved ``re_l,im_l`` for each grid point in ascending ``x`` order.
    Subsequent lines carry one time sample each, full-precision floats.
    """
    grid = series.grid
    ic = series.ic_spec
    header = [
        SNAPSHOT_SCHEMA,
        f"L={float(grid.half_length)!r}",
        f"K_T={grid.num_points}",
        f"dt={series.dt!r}",
        f"N_T={len(series.times) - 1}",
        f"epsilon={'' if ic is None else repr(float(ic.epsilon))}",
        f"x_s={'' if ic is None else repr(float(ic.x_secondary))}",
        f"seed={'' if ic is None else ic.seed}",
    ]
    columns = ["t"]
    for l in range(grid.num_points):
        columns += [f"re_{l}", f"im_{l}"]
    with open(path, "w") as fh:
        fh.write(",".join(header) + "\n")
        fh.write(",".join(columns) + "\n")
        for n, t in enumerate(series.times):
            col = series.values[:, n]
            row = [repr(float(t))]
            for v in col:
                row += [repr(float(v.real)), repr(float(v.imag))]
            fh.write(",".join(row) + "\n")


def read_snapshots(path) -> SnapshotSeries:
    """Read a series written by :func:`write_snapshots` (exact round trip)."""
    with open(path) as fh:
        header = fh.readline().rstrip("\n").split(",")
        if not header or header[0] != SNAPSHOT_SCHEMA:
            raise StructuralError(f"unrecognized snapshot file schema: {header[:1]}")
        meta = dict(item.split("=", 1) for item in header[1:])
        fh.readline()  # column names
        grid = build_grid(float(meta["L"]), int(meta["K_T"]))
        n_samples = int(meta["N_T"]) + 1
        times = np.empty(n_samples)
        values = np.empty((grid.num_points, n_samples), dtype=np.complex128)
        for n in range(n_samples):
            parts = fh.readline().rstrip("\n").split(",")
            if len(parts) != 1 + 2 * grid.num_points:
                raise StructuralError(f"snapshot row {n} has {len(parts)} fields")
            times[n] = float(parts[0])
            flat = np.array(parts[1:], dtype=np.float64)
            values[:, n] = flat[0::2] + 1j * flat[1::2]
    ic = None
    if meta["epsilon"]:
        ic = InitialConditionSpec(
            epsilon=float(meta["epsilon"]),
            x_secondary=float(meta["x_s"]),
            seed=int(meta["seed"]),
        )
    return SnapshotSeries(grid, times, values, ic_spec=ic)
