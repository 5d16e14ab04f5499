import numpy as np
import pytest

import mdmd as m
from mdmd.solver import _background_coefficients, _render_background


def test_build_grid_benchmark_values():
    grid = m.build_grid(32.0, 256)
    assert grid.dx == pytest.approx(0.25, abs=0)
    assert grid.dk == pytest.approx(np.pi / 32.0, abs=0)
    assert grid.x[0] == -32.0 and grid.x[-1] == 32.0 - 0.25
    np.testing.assert_allclose(grid.wavenumbers, -np.pi / 0.25 + grid.dk * np.arange(256), rtol=0, atol=0)


def test_build_grid_small_domain():
    grid = m.build_grid(1.0, 8)
    np.testing.assert_allclose(grid.x, np.arange(-1.0, 1.0, 0.25), atol=0)


def test_build_grid_rejects_bad_sizes():
    with pytest.raises(m.ConfigurationError):
        m.build_grid(32.0, 100)
    with pytest.raises(m.ConfigurationError):
        m.build_grid(32.0, 4)
    with pytest.raises(m.ConfigurationError):
        m.build_grid(-1.0, 256)


def test_wavenumbers_match_fft_layout():
    grid = m.build_grid(5.0, 64)
    np.testing.assert_allclose(np.fft.fftshift(grid.wavenumbers_fft), grid.wavenumbers, atol=1e-14)


def test_timegrid_benchmark_counts():
    tg = m.TimeGrid(0.1, 30.0)
    assert tg.num_steps == 300
    assert len(tg.times) == 301
    np.testing.assert_allclose(tg.times[:3], [0.0, 0.1, 0.2], atol=1e-15)
    with pytest.raises(m.ConfigurationError):
        m.TimeGrid(-0.1, 30.0)


def test_initial_condition_unperturbed_is_exact_soliton(paper_grid):
    state = m.make_initial_condition(paper_grid, m.InitialConditionSpec(epsilon=0.0))
    assert np.array_equal(state.values, m.soliton(paper_grid, 0.0))


def test_initial_condition_noise_within_derived_bound(paper_grid):
    # the background amplitude at any point is bounded by the absolute sum
    # of its Fourier coefficients, computed here by direct summation
    spec = m.InitialConditionSpec(epsilon=0.05, x_secondary=5.0, seed=99)
    u = m.make_initial_condition(paper_grid, spec).values
    bound = (paper_grid.dk / (2 * np.pi)) * np.sum(np.exp(-2.0 * paper_grid.wavenumbers**2))
    center = np.sqrt(2.0) * (1.0 + 0.05 / np.cosh(5.0))
    i0 = int(np.argmin(np.abs(paper_grid.x)))
    assert paper_grid.x[i0] == 0.0
    assert center - 0.05 * bound <= abs(u[i0]) <= center + 0.05 * bound


def test_initial_condition_deterministic(paper_grid):
    spec = m.InitialConditionSpec(epsilon=0.25, x_secondary=5.0, seed=1234)
    a = m.make_initial_condition(paper_grid, spec).values
    b = m.make_initial_condition(paper_grid, spec).values
    assert np.array_equal(a, b)


def test_initial_condition_validates_peak_location(paper_grid):
    with pytest.raises(m.ConfigurationError):
        m.make_initial_condition(paper_grid, m.InitialConditionSpec(0.1, 32.0, 0))
    with pytest.raises(m.ConfigurationError):
        m.InitialConditionSpec(epsilon=-0.1)


def test_background_matches_direct_summation():
    grid = m.build_grid(4.0, 64)
    coeff = _background_coefficients(grid, 3)
    brute = (grid.dk / (2 * np.pi)) * np.array(
        [np.sum(coeff * np.exp(1j * grid.wavenumbers * x)) for x in grid.x]
    )
    fast = _render_background(coeff, grid, grid)
    np.testing.assert_allclose(fast, brute, atol=1e-13)


def test_step_zero_field_fixed_point(paper_grid):
    state = m.FieldState(np.zeros(256, dtype=np.complex128), 0.0)
    out = m.step(state, paper_grid, 0.1)
    assert np.array_equal(out.values, np.zeros(256))
    assert out.time == pytest.approx(0.1)


def test_step_soliton_local_error_scaling(paper_grid):
    # one-step deviation from the rotated soliton drops by >= 2^4 per halving
    errors = []
    for dt in (0.05, 0.025, 0.0125):
        state = m.FieldState(m.soliton(paper_grid, 0.0), 0.0)
        out = m.step(state, paper_grid, dt)
        errors.append(np.max(np.abs(out.values - m.soliton(paper_grid, dt))))
    assert errors[0] < 2e-4
    assert errors[0] / errors[1] > 16.0
    assert errors[1] / errors[2] > 16.0


def test_step_linear_only_advances_single_mode_phase(paper_grid):
    k = paper_grid.wavenumbers[140]
    u = 0.7 * np.exp(1j * k * paper_grid.x)
    out = m.step(m.FieldState(u, 0.0), paper_grid, 0.1, nonlinear=False)
    np.testing.assert_allclose(out.values, np.exp(-1j * k**2 * 0.1) * u, atol=1e-12)


@pytest.mark.filterwarnings("ignore:overflow", "ignore:invalid value")
def test_step_blowup_reports_time(paper_grid):
    state = m.FieldState(np.full(256, 1e200 + 0j), 2.5)
    with pytest.raises(m.BlowUpError) as excinfo:
        m.step(state, paper_grid, 0.1)
    assert excinfo.value.time == pytest.approx(2.6)


def test_simulate_snapshot_counts(soliton_series):
    assert soliton_series.values.shape == (256, 301)
    assert len(soliton_series.states) == 301
    np.testing.assert_allclose(np.diff(soliton_series.times), 0.1, atol=1e-12)


def test_simulate_energy_conservation(soliton_series, noisy_series, paper_grid):
    for series in (soliton_series, noisy_series):
        totals = paper_grid.dx * np.sum(np.abs(series.values) ** 2, axis=0)
        assert np.max(np.abs(totals - totals[0])) / totals[0] <= 1e-8


def test_simulate_soliton_fidelity(soliton_series, paper_grid):
    final = soliton_series.values[:, -1]
    assert np.max(np.abs(final - m.soliton(paper_grid, 30.0))) <= 1e-4


def test_simulate_temporal_convergence_order(paper_grid):
    errors = []
    for dt in (0.025, 0.0125):
        series = m.simulate(m.InitialConditionSpec(), paper_grid, m.TimeGrid(dt, 30.0), substeps=1)
        errors.append(np.max(np.abs(series.values[:, -1] - m.soliton(paper_grid, 30.0))))
    order = np.log2(errors[0] / errors[1])
    assert order >= 3.6


def test_simulate_deterministic(paper_grid):
    spec = m.InitialConditionSpec(epsilon=0.05, x_secondary=5.0, seed=11)
    tg = m.TimeGrid(0.1, 1.0)
    a = m.simulate(spec, paper_grid, tg)
    b = m.simulate(spec, paper_grid, tg)
    assert np.array_equal(a.values, b.values)


def test_simulate_validates_accuracy_knobs(paper_grid):
    with pytest.raises(m.ConfigurationError):
        m.simulate(m.InitialConditionSpec(), paper_grid, m.TimeGrid(0.1, 1.0), substeps=0)


def test_energy_of_soliton(paper_grid):
    # continuum integral of 2 sech^2 is exactly 4
    value = m.energy(m.FieldState(m.soliton(paper_grid), 0.0), paper_grid)
    assert value == pytest.approx(4.0, abs=1e-9)


def test_hamiltonian_zero_field(paper_grid):
    assert m.hamiltonian(m.FieldState(np.zeros(256, dtype=complex), 0.0), paper_grid) == 0.0


# frozen from the high-resolution quadrature oracle (K_T = 4096, L = 32)
SOLITON_HAMILTONIAN = -0.6666666666666666


def test_hamiltonian_soliton_regression(paper_grid):
    hi = m.build_grid(32.0, 4096)
    oracle = m.hamiltonian(m.FieldState(m.soliton(hi), 0.0), hi)
    assert oracle == pytest.approx(SOLITON_HAMILTONIAN, abs=1e-12)
    value = m.hamiltonian(m.FieldState(m.soliton(paper_grid), 0.0), paper_grid)
    assert value == pytest.approx(SOLITON_HAMILTONIAN, abs=1e-10)


def test_hamiltonian_drift_weak_noise(noisy_series, paper_grid):
    values = np.array([m.hamiltonian(noisy_series.state(n), paper_grid) for n in range(0, 301, 10)])
    assert np.max(np.abs(values - values[0])) / abs(values[0]) <= 1e-6


def test_snapshot_series_rejects_nonuniform_times(paper_grid):
    values = np.zeros((256, 3), dtype=complex)
    with pytest.raises(m.StructuralError):
        m.SnapshotSeries(paper_grid, np.array([0.0, 0.1, 0.3]), values)


def test_snapshots_roundtrip(tmp_path, paper_grid):
    spec = m.InitialConditionSpec(epsilon=0.05, x_secondary=5.0, seed=5)
    series = m.simulate(spec, paper_grid, m.TimeGrid(0.1, 0.5))
    path = tmp_path / "run.csv"
    m.write_snapshots(path, series)
    back = m.read_snapshots(path)
    assert np.array_equal(back.values, series.values)
    assert np.array_equal(back.times, series.times)
    assert back.grid.num_points == 256 and back.grid.half_length == 32.0
    assert back.ic_spec == spec


def test_snapshots_roundtrip_without_ic_spec(tmp_path, paper_grid):
    values = (np.arange(256 * 2) + 1j).reshape(256, 2)
    series = m.SnapshotSeries(paper_grid, np.array([0.0, 0.1]), values)
    path = tmp_path / "bare.csv"
    m.write_snapshots(path, series)
    back = m.read_snapshots(path)
    assert back.ic_spec is None
    assert np.array_equal(back.values, values)


def test_read_snapshots_rejects_unknown_schema(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("some-other-format,L=1\n")
    with pytest.raises(m.StructuralError):
        m.read_snapshots(path)
