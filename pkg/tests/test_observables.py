import numpy as np
import pytest

import mdmd as m
from mdmd.observables import CANONICAL, SCALE_ENERGY, besov_label


def _tiny_series(grid, columns):
    times = 0.1 * np.arange(columns.shape[1])
    return m.SnapshotSeries(grid, times, columns)


def test_canonical_tracks_rotating_profile(soliton_series, paper_grid):
    matrix = m.canonical_observables(soliton_series)
    assert matrix.values.shape == (256, 301)
    for n in (0, 150, 300):
        expected = m.soliton(paper_grid, soliton_series.times[n])
        assert np.max(np.abs(matrix.values[:, n] - expected)) < 1e-4


def test_canonical_single_snapshot(paper_grid):
    state = m.make_initial_condition(paper_grid, m.InitialConditionSpec())
    series = _tiny_series(paper_grid, state.values[:, None])
    matrix = m.canonical_observables(series)
    assert matrix.values.shape == (256, 1)
    assert np.array_equal(matrix.values[:, 0], state.values)


def test_canonical_zero_field(paper_grid):
    series = _tiny_series(paper_grid, np.zeros((256, 4), dtype=complex))
    assert np.all(m.canonical_observables(series).values == 0)


def test_multiscale_row_counts(noisy_series):
    config = m.ObservableConfig(mode="mdmd", num_levels=7)
    matrix = m.multiscale_observables(noisy_series, config)
    assert matrix.values.shape[0] == 24  # 3 * (7 + 1)
    assert matrix.labels == [SCALE_ENERGY, "besov_1_2_2", "besov_0_2_4"]
    assert besov_label(1.0, 2.0, 2.0) == "besov_1_2_2"


def test_stack_row_counts(noisy_series):
    mdmd_stack = m.stack(m.ObservableConfig(mode="mdmd", num_levels=7), noisy_series)
    assert mdmd_stack.values.shape[0] == 280  # 256 + 24
    dmd_stack = m.stack(m.ObservableConfig(mode="dmd"), noisy_series)
    assert dmd_stack.values.shape[0] == 256
    small = m.stack(m.ObservableConfig(mode="mdmd", num_levels=1), noisy_series)
    assert small.values.shape[0] == 256 + 6
    config = m.ObservableConfig(mode="mdmd", num_levels=7)
    assert config.observable_count(256) == 280


def test_energy_block_sums_to_discrete_norm(noisy_series, paper_grid):
    config = m.ObservableConfig(mode="mdmd", num_levels=5)
    matrix = m.multiscale_observables(noisy_series, config)
    block = matrix.block(SCALE_ENERGY).real
    for n in (0, 100, 300):
        field = noisy_series.values[:, n]
        norm_sq = paper_grid.dx * np.sum(np.abs(field) ** 2)
        assert abs(np.sum(block[:, n]) - norm_sq) / norm_sq < 1e-10


def test_energy_block_constant_along_trajectory(noisy_series):
    config = m.ObservableConfig(mode="mdmd", num_levels=7)
    matrix = m.multiscale_observables(noisy_series, config)
    sums = np.sum(matrix.block(SCALE_ENERGY).real, axis=0)
    assert np.max(np.abs(sums - sums[0])) / sums[0] <= 1e-8


def test_norm_rows_real_and_nonnegative(noisy_series):
    config = m.ObservableConfig(mode="mdmd", num_levels=4)
    matrix = m.multiscale_observables(noisy_series, config)
    assert np.all(matrix.values.imag == 0)
    assert np.all(matrix.values.real >= 0)


def test_phase_rotation_leaves_norm_rows_invariant(paper_grid):
    rng = np.random.default_rng(10)
    base = rng.normal(size=(256, 5)) + 1j * rng.normal(size=(256, 5))
    config = m.ObservableConfig(mode="mdmd", num_levels=6)
    plain = m.stack(config, _tiny_series(paper_grid, base))
    rotated = m.stack(config, _tiny_series(paper_grid, np.exp(0.7j) * base))
    k = 256
    np.testing.assert_allclose(
        rotated.values[k:], plain.values[k:], rtol=1e-10, atol=1e-12
    )
    np.testing.assert_allclose(
        rotated.values[:k], np.exp(0.7j) * plain.values[:k], rtol=0, atol=1e-12
    )


def test_zero_field_gives_zero_rows(paper_grid):
    series = _tiny_series(paper_grid, np.zeros((256, 3), dtype=complex))
    matrix = m.multiscale_observables(series, m.ObservableConfig(mode="mdmd", num_levels=3))
    assert np.all(matrix.values == 0)


def test_block_addressing_is_consistent(noisy_series):
    config = m.ObservableConfig(mode="mdmd", num_levels=7)
    stacked = m.stack(config, noisy_series)
    canonical = m.canonical_observables(noisy_series)
    assert np.array_equal(stacked.block(CANONICAL), canonical.values)
    multi = m.multiscale_observables(noisy_series, config)
    assert np.array_equal(stacked.block(SCALE_ENERGY), multi.block(SCALE_ENERGY))
    with pytest.raises(m.StructuralError):
        stacked.block("missing")


def test_incompatible_levels_raise(paper_grid):
    series = _tiny_series(paper_grid, np.zeros((256, 2), dtype=complex))
    config = m.ObservableConfig(mode="mdmd", num_levels=8)
    with pytest.raises(m.ConfigurationError):
        m.multiscale_observables(series, config)


def test_mode_validation():
    with pytest.raises(m.ConfigurationError):
        m.ObservableConfig(mode="hybrid")


def test_observables_roundtrip(tmp_path, paper_grid):
    rng = np.random.default_rng(11)
    data = rng.normal(size=(256, 4)) + 1j * rng.normal(size=(256, 4))
    matrix = m.stack(m.ObservableConfig(mode="mdmd", num_levels=2), _tiny_series(paper_grid, data))
    path = tmp_path / "observables.csv"
    m.write_observables(path, matrix)
    back = m.read_observables(path)
    assert np.array_equal(back.values, matrix.values)
    assert back.blocks == matrix.blocks
    assert np.array_equal(back.times, matrix.times)
