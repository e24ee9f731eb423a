import numpy as np
import pytest

from trimode import (
    InvalidParameterError,
    ModelParams,
    StateLabel,
    apply_hamiltonian,
    build_hamiltonian,
    classify_states,
    cluster_minima,
    detect_degeneracies,
    diagonalize,
    inflection_energies,
    mode_populations,
    spacings,
)


def spectrum_of(n, g, big_g):
    return diagonalize(build_hamiltonian(ModelParams(n, g, big_g)))


def test_uncoupled_spectrum_is_exact_ladder():
    s = spectrum_of(500, 0.0, 0.0)
    assert np.array_equal(s.eigenvalues, np.arange(251.0))


def test_trace_n4():
    s = spectrum_of(4, 0.0, 0.1)
    assert s.eigenvalues.sum() == pytest.approx(3.0, abs=1e-12)


def test_lowest_eigenvalue_negative_at_strong_coupling():
    s = spectrum_of(500, 0.0, 0.002)
    assert s.eigenvalues[0] < 0.0
    assert s.eigenvalues[-1] > 250.0


def test_eigenvector_invariants():
    params = ModelParams(100, -0.01, 0.05)
    h = build_hamiltonian(params)
    s = diagonalize(h)
    norms = np.linalg.norm(s.eigenvectors, axis=0)
    assert np.abs(norms - 1.0).max() <= 1e-12
    gram = s.eigenvectors.T @ s.eigenvectors
    assert np.abs(gram - np.eye(s.dim)).max() <= 1e-9
    for i in range(0, s.dim, 7):
        resid = apply_hamiltonian(h, s.eigenvectors[:, i])
        resid -= s.eigenvalues[i] * s.eigenvectors[:, i]
        assert np.abs(resid).max() <= 1e-9 * max(1.0, abs(s.eigenvalues[i]))


def test_sign_convention_deterministic():
    a = spectrum_of(60, 0.02, 0.08)
    b = spectrum_of(60, 0.02, 0.08)
    assert np.array_equal(a.eigenvectors, b.eigenvectors)
    for i in range(a.dim):
        col = a.eigenvectors[:, i]
        lead = np.flatnonzero(np.abs(col) > 1e-12)[0]
        assert col[lead] > 0


def test_diagonalize_rejects_bad_tol():
    h = build_hamiltonian(ModelParams(4, 0.0, 0.1))
    with pytest.raises(InvalidParameterError):
        diagonalize(h, tol=0.0)


def test_spacings_flat_ladder():
    profile = spacings(spectrum_of(500, 0.0, 0.0))
    assert np.allclose(profile.spacings, 1.0)
    assert profile.minima_indices == ()


def test_spacings_plateau_counts_once():
    from trimode import Spectrum

    # synthetic spectrum: gaps 3,1,1,3 -> one plateau minimum at its left edge
    w = np.array([0.0, 3.0, 4.0, 5.0, 8.0])
    s = Spectrum(w, np.eye(5))
    profile = spacings(s)
    assert profile.minima_indices == (1,)


def test_two_minima_clusters_at_window_edges():
    params = ModelParams(500, 0.0, 0.002)
    s = diagonalize(build_hamiltonian(params))
    profile = spacings(s)
    clusters = cluster_minima(list(profile.minima_indices), gap=3)
    assert len(clusters) == 2
    lo, up = inflection_energies(params)
    i_lo = int(np.argmin(np.abs(s.eigenvalues - lo)))
    i_up = int(np.argmin(np.abs(s.eigenvalues - up)))
    assert min(abs(i - i_lo) for c in clusters for i in c) <= 2
    assert min(abs(i - i_up) for c in clusters for i in c) <= 2


def test_spacing_minima_track_separatrix_existence():
    # gp = 0.375, Gp = 0.25: only the lower separatrix exists (the upper
    # needs Gp > 0.3125), so a single minimum cluster near the E = 0
    # crossing survives
    params = ModelParams(500, 0.003, 0.002)
    s = diagonalize(build_hamiltonian(params))
    clusters = cluster_minima(list(spacings(s).minima_indices), gap=3)
    assert len(clusters) == 1
    i_lo = int(np.argmin(np.abs(s.eigenvalues)))
    assert min(abs(i - i_lo) for i in clusters[0]) <= 2


def test_spacing_minima_asymmetric_for_positive_g():
    # above both thresholds (Gp = 0.375 > 0.3125) two minima exist but sit
    # asymmetrically, unlike the g = 0 mirror-symmetric profile
    s = spectrum_of(500, 0.003, 0.003)
    profile = spacings(s)
    clusters = cluster_minima(list(profile.minima_indices), gap=3)
    assert len(clusters) == 2
    first, last = clusters[0][0], clusters[-1][-1]
    centre = (len(profile.spacings) - 1) / 2
    assert abs((first - centre) + (last - centre)) > 4


@pytest.mark.parametrize(
    "g,expected_upper",
    [(0.0, 250.0), (0.003, 437.5), (-0.003, 62.5)],
)
def test_inflection_energies(g, expected_upper):
    lo, up = inflection_energies(ModelParams(500, g, 0.001))
    assert lo == 0.0
    assert up == pytest.approx(expected_upper, rel=1e-15)


def test_detect_degeneracies_exact_crossing():
    # g = -1/333 makes levels m = 166, 167 exactly degenerate at G = 0
    s = spectrum_of(500, -1.0 / 333.0, 0.0)
    pairs = detect_degeneracies(s, rel_tol=1e-12)
    assert len(pairs) >= 1
    for i, j in pairs:
        assert j == i + 1
        assert abs(s.eigenvalues[j] - s.eigenvalues[i]) <= 1e-9


def test_detect_degeneracies_empty_for_paper_point():
    s = spectrum_of(500, 0.0, 0.002)
    assert detect_degeneracies(s) == []


def test_narrow_doublet_structure_collapses_with_coupling():
    # the visible two-fold near-degeneracy of the g < 0 spectrum: many
    # narrow doublets at weak coupling, essentially none above the upper
    # separatrix threshold G/d = 0.0005
    def doublets(big_g):
        s = spectrum_of(500, -0.003, big_g)
        return int(np.count_nonzero(np.diff(s.eigenvalues) < 0.2))

    weak = doublets(0.0002)
    strong = doublets(0.001)
    assert weak > 50
    assert strong <= 3
    # the collapse brackets the classical threshold within a factor-2 scan
    mid = doublets(0.0005)
    assert weak > 3 * mid > 3 * strong


def test_mode_populations_uncoupled_ground():
    s = spectrum_of(40, 0.0, 0.0)
    assert mode_populations(s, 0) == (0.0, 40.0, 0.0)


def test_mode_populations_conserve_total():
    s = spectrum_of(60, -0.01, 0.07)
    for i in range(s.dim):
        n0, n1, n2 = mode_populations(s, i)
        assert n0 + n1 + n2 == pytest.approx(60.0, abs=1e-9)
        assert n0 == n2


def test_mode_populations_index_out_of_range():
    s = spectrum_of(4, 0.0, 0.1)
    with pytest.raises(InvalidParameterError):
        mode_populations(s, 3)


def test_population_inversion_at_near_degenerate_pair():
    s = spectrum_of(500, -0.003, 0.0002)
    gaps = np.diff(s.eigenvalues)
    i = int(np.argmin(gaps))
    n0_a, n1_a, _ = mode_populations(s, i)
    n0_b, n1_b, _ = mode_populations(s, i + 1)
    assert (n0_a > n1_a) != (n0_b > n1_b)


def test_classify_states_uncoupled_all_mst():
    params = ModelParams(100, 0.01, 0.0)
    labels, below, above = classify_states(
        diagonalize(build_hamiltonian(params)), params
    )
    assert set(labels) == {StateLabel.MST}
    assert below == 0.0 and above == 0.0


def test_classify_states_symmetric_fractions():
    params = ModelParams(500, 0.0, 0.002)
    _, below, above = classify_states(
        diagonalize(build_hamiltonian(params)), params
    )
    assert below > 0.0 and above > 0.0
    assert abs(below - above) <= 1.0 / 251.0


def test_classify_states_subcritical_edge_states():
    # below the classical threshold exactly one level sits marginally
    # outside each window edge (second-order level repulsion)
    params = ModelParams(500, 0.0, 0.0005)
    _, below, above = classify_states(
        diagonalize(build_hamiltonian(params)), params
    )
    assert below == pytest.approx(1.0 / 251.0)
    assert above == pytest.approx(1.0 / 251.0)


def test_spectrum_reflection_symmetry_at_g_zero():
    # exact only in the large-N limit; the finite-N deviation is O(N^-1)
    # relative to the spectral width
    for big_g in (0.0005, 0.001, 0.002):
        s = spectrum_of(500, 0.0, big_g)
        w = s.eigenvalues
        dev = np.abs(w + w[::-1] - 250.0).max()
        assert dev <= 2e-3 * 500
        assert w.mean() == pytest.approx(125.0, abs=1e-9)


def test_degeneracy_pairs_vs_spacing_scale():
    # minimum spacing at the near-degenerate point, for reference: the
    # doublets are narrow on the plot scale but far from exact
    s = spectrum_of(500, -0.003, 0.0002)
    width = s.eigenvalues[-1] - s.eigenvalues[0]
    min_rel = np.diff(s.eigenvalues).min() / width
    assert 1e-5 < min_rel < 1e-2
