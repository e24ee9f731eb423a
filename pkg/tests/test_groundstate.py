import numpy as np
import pytest

from trimode import (
    ComputationError,
    InvalidParameterError,
    ModelParams,
    SweepTable,
    classical_ground_energy,
    coupling_sweep,
    critical_coupling,
    finite_difference,
    finite_size_scaling,
    ground_observables,
    jump_statistics,
    rescale,
)


def test_uncoupled_ground_state():
    for n, g in ((10, 0.0), (500, 0.2), (40, 1.5)):
        rep = ground_observables(ModelParams(n, g, 0.0))
        assert rep.energy == 0.0
        assert rep.n0_mean == 0.0
        assert rep.linear_entropy == 0.0


def test_ground_energy_matches_classical_minimum_at_strong_coupling():
    rep = ground_observables(ModelParams(500, 0.0, 0.002))
    assert rep.energy / 125.0 == pytest.approx(-0.25, abs=0.02)


def test_subcritical_ground_state_practically_empty():
    rep = ground_observables(ModelParams(500, 0.0, 0.0008))
    assert rep.n0_mean < 0.5
    assert rep.linear_entropy < 0.5
    strong = ground_observables(ModelParams(500, 0.0, 0.002))
    assert strong.n0_mean > 40.0
    assert strong.linear_entropy > 0.9


def test_entropy_bounds_and_normalization():
    for big_g in (0.0005, 0.001, 0.002):
        params = ModelParams(500, 0.0, big_g)
        rep = ground_observables(params)
        assert 0.0 <= rep.linear_entropy <= 1.0 - 1.0 / params.dim
        assert 0.0 <= rep.n0_mean <= 250.0


def test_sweep_single_point():
    table = coupling_sweep(500, 0.0, [0.0])
    assert len(table) == 1
    assert table.energy[0] == 0.0
    assert table.n0_mean[0] == 0.0
    assert table.linear_entropy[0] == 0.0


def test_sweep_population_monotone_across_transition():
    grid = np.linspace(0.0005, 0.003, 26)
    table = coupling_sweep(500, 0.0, grid)
    assert np.all(np.diff(table.n0_mean) >= -1e-9)


def test_sweep_entropy_monotone_after_transition():
    grid = np.linspace(0.0012, 0.003, 19)
    table = coupling_sweep(500, 0.0, grid)
    assert np.all(np.diff(table.linear_entropy) >= 0.0)


def test_sweep_rejects_unsorted_grid():
    with pytest.raises(InvalidParameterError):
        coupling_sweep(500, 0.0, [0.002, 0.001])


def _table_from_columns(x, y):
    return SweepTable(4, 0.0, np.asarray(x, float), np.asarray(y, float),
                      np.zeros(len(x)), np.zeros(len(x)))


def test_finite_difference_constant_column():
    x = np.linspace(0.0, 1.0, 11)
    table = _table_from_columns(x, np.full(11, 3.7))
    assert np.abs(finite_difference(table, "energy", 1)).max() <= 1e-10


def test_finite_difference_linear_column():
    x = np.linspace(0.0, 1.0, 11)
    table = _table_from_columns(x, 2.5 * x)
    d = finite_difference(table, "energy", 1)
    assert np.abs(d - 2.5).max() <= 1e-8


def test_finite_difference_quadratic_second_derivative():
    x = np.linspace(0.0, 2.0, 21)
    table = _table_from_columns(x, 1.5 * x ** 2)
    d2 = finite_difference(table, "energy", 2)
    assert np.abs(d2 - 3.0).max() <= 1e-8


def test_finite_difference_endpoint_order():
    # O(h^2) one-sided stencils: cubic errors shrink by ~4 when h halves
    def endpoint_error(npts):
        x = np.linspace(0.0, 1.0, npts)
        table = _table_from_columns(x, x ** 3)
        d = finite_difference(table, "energy", 1)
        return abs(d[0] - 0.0)

    e1, e2 = endpoint_error(11), endpoint_error(21)
    assert e2 < e1 / 3.0


def test_finite_difference_rejects_nonuniform_grid():
    table = _table_from_columns([0.0, 0.1, 0.3, 0.4], [0.0, 1.0, 2.0, 3.0])
    with pytest.raises(InvalidParameterError):
        finite_difference(table, "energy", 1)


def test_finite_difference_needs_enough_rows():
    table = _table_from_columns([0.0, 0.1, 0.2], [0.0, 1.0, 2.0])
    with pytest.raises(InvalidParameterError):
        finite_difference(table, "energy", 2)


def test_finite_difference_unknown_column():
    table = _table_from_columns([0.0, 0.1, 0.2], [0.0, 1.0, 2.0])
    with pytest.raises(InvalidParameterError):
        finite_difference(table, "population", 1)


def test_derivative_consistency_on_smooth_region():
    # away from the transition, d2 agrees with d(d1) up to stencil error,
    # which must shrink like the square of the grid step
    def discrepancy(npts):
        grid = np.linspace(0.0015, 0.003, npts)
        table = coupling_sweep(500, 0.0, grid)
        d1 = finite_difference(table, "energy", 1)
        d2 = finite_difference(table, "energy", 2)
        nested = _table_from_columns(grid, d1)
        d2_nested = finite_difference(nested, "energy", 1)
        inner = slice(2, -2)
        return np.abs(d2[inner] - d2_nested[inner]).max(), np.abs(d2[inner]).max()

    coarse, scale = discrepancy(31)
    fine, _ = discrepancy(61)
    assert coarse <= 0.05 * scale
    assert fine <= coarse / 2.5


def test_critical_coupling_n500():
    grid = np.linspace(0.0, 0.003, 61)
    est = critical_coupling(500, 0.0, grid)
    assert est.coupling == pytest.approx(0.001, abs=1e-4)
    assert est.peak_height > 0.0


@pytest.mark.parametrize("n,expected", [(200, 0.0025), (1000, 0.0005)])
def test_critical_coupling_rescales_with_size(n, expected):
    # fixed classical threshold Gp = 1/8 maps to G/d = 0.5/N
    gp_grid = np.linspace(0.05, 0.35, 61)
    est = critical_coupling(n, 0.0, 4.0 * gp_grid / n)
    step = 4.0 * (gp_grid[1] - gp_grid[0]) / n
    assert abs(est.coupling - expected) <= step


def test_critical_coupling_boundary_peak_is_inconclusive():
    grid = np.linspace(0.0015, 0.003, 16)
    with pytest.raises(ComputationError):
        critical_coupling(500, 0.0, grid)


def test_finite_size_scaling_trend():
    gp_grid = np.linspace(0.05, 0.35, 61)
    rows = finite_size_scaling([200, 500, 1000], 0.0, gp_grid)
    heights = [r.peak_height for r in rows]
    assert heights == sorted(heights)
    assert heights[0] < heights[1] < heights[2]
    for r in rows:
        assert r.peak_location == pytest.approx(0.125, abs=0.01)


def test_finite_size_scaling_single_size():
    rows = finite_size_scaling([500], 0.0, np.linspace(0.05, 0.35, 31))
    assert len(rows) == 1
    assert rows[0].n_total == 500


def test_quantum_classical_ground_energy_agreement():
    grid = np.linspace(0.0, 0.003, 31)
    for g in (0.0, 0.003, -0.003):
        table = coupling_sweep(500, g, grid)
        for c, e in zip(table.couplings, table.energy):
            h_min = classical_ground_energy(rescale(500, g, float(c)))
            assert abs(e / 125.0 - h_min) <= 5.0 / 500.0


def test_jump_statistics_detects_synthetic_kink():
    x = np.linspace(-1.0, 1.0, 81)
    smooth = np.tanh(3 * x)
    inside, outside = jump_statistics(smooth, 40, 8)
    assert inside <= 3.0 * outside
    kinked = np.where(x > 0, 5.0 + x, x)
    inside_k, outside_k = jump_statistics(kinked, 40, 8)
    assert inside_k > 10.0 * outside_k


def test_jump_statistics_window_validation():
    with pytest.raises(InvalidParameterError):
        jump_statistics(np.arange(10.0), 5, 50)
