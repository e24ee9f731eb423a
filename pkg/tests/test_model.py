import math

import numpy as np
import pytest
from scipy.linalg import eigh_tridiagonal

from trimode import (
    InvalidParameterError,
    ModelParams,
    apply_hamiltonian,
    build_basis,
    build_hamiltonian,
    dense_oracle,
)


def test_basis_enumeration_n4():
    basis = build_basis(4)
    assert [b.occupations for b in basis] == [(0, 4, 0), (1, 2, 1), (2, 0, 2)]


def test_basis_enumeration_n2():
    basis = build_basis(2)
    assert [b.occupations for b in basis] == [(0, 2, 0), (1, 0, 1)]


@pytest.mark.parametrize("bad", [5, 1, 0, -2, 3])
def test_basis_rejects_bad_n(bad):
    with pytest.raises(InvalidParameterError):
        build_basis(bad)


def test_basis_population_consistency():
    for state in build_basis(20):
        n0, n1, n2 = state.occupations
        assert n0 == n2
        assert n1 == 20 - 2 * n0
        assert n0 + n1 + n2 == 20


def test_params_validation():
    with pytest.raises(InvalidParameterError):
        ModelParams(7, 0.0, 0.1)
    with pytest.raises(InvalidParameterError):
        ModelParams(4, 0.0, -0.1)
    with pytest.raises(InvalidParameterError):
        ModelParams(0, 0.0, 0.0)
    p = ModelParams(4, -0.5, 0.0, big_g_phase=1.0)
    assert p.dim == 3


def test_build_hamiltonian_n4():
    h = build_hamiltonian(ModelParams(4, 0.0, 0.1))
    assert np.allclose(h.diag, [0.0, 1.0, 2.0])
    # ladder amplitudes: 1*sqrt(4*3) and 2*sqrt(2*1), scaled by G/d
    assert np.allclose(h.offdiag, [0.1 * math.sqrt(12.0), 0.2 * math.sqrt(2.0)])


def test_build_hamiltonian_diagonal_case():
    h = build_hamiltonian(ModelParams(2, 0.5, 0.0))
    assert np.allclose(h.diag, [0.0, 1.5])
    assert np.allclose(h.offdiag, [0.0])


def test_build_hamiltonian_large_n_diagonal_entry():
    h = build_hamiltonian(ModelParams(500, 0.0, 0.123))
    assert h.diag[250] == 250.0
    assert h.diag[0] == 0.0
    assert h.dim == 251
    assert h.n_total == 500


def test_build_hamiltonian_phase_independent():
    a = build_hamiltonian(ModelParams(8, 0.1, 0.2, big_g_phase=0.0))
    b = build_hamiltonian(ModelParams(8, 0.1, 0.2, big_g_phase=2.1))
    assert np.array_equal(a.diag, b.diag)
    assert np.array_equal(a.offdiag, b.offdiag)


def test_hamiltonian_arrays_are_write_locked():
    h = build_hamiltonian(ModelParams(6, 0.0, 0.1))
    with pytest.raises(ValueError):
        h.diag[0] = 1.0


def test_dense_oracle_n2_element():
    # a0+ a2+ a1^2 |0,2,0> = sqrt(2) |1,0,1>
    h = dense_oracle(ModelParams(2, 0.0, 0.1))
    assert h[1, 0] == pytest.approx(0.1 * math.sqrt(2.0), rel=1e-15)
    assert h[0, 1] == pytest.approx(h[1, 0].conjugate(), rel=1e-15)


def test_dense_oracle_matches_tridiagonal_entrywise():
    params = ModelParams(4, 0.37, 0.21, big_g_phase=0.6)
    dense = dense_oracle(params)
    tri = build_hamiltonian(params)
    phase = np.exp(1j * params.big_g_phase)
    expected = np.diag(tri.diag).astype(complex)
    expected += np.diag(tri.offdiag * phase, k=-1)
    expected += np.diag(tri.offdiag * np.conj(phase), k=1)
    assert np.allclose(dense, expected, rtol=1e-12, atol=1e-15)
    assert np.allclose(dense, dense.conj().T)


def test_dense_oracle_diagonal_when_uncoupled():
    h = dense_oracle(ModelParams(10, 0.3, 0.0))
    assert np.allclose(h, np.diag(np.diag(h)))


def test_dense_oracle_refuses_large_n():
    with pytest.raises(InvalidParameterError):
        dense_oracle(ModelParams(66, 0.0, 0.1))


def test_oracle_equivalence_random_draws():
    rng = np.random.default_rng(7)
    for n in (2, 4, 6, 8, 10):
        for _ in range(10):
            g = rng.uniform(-0.5, 0.5)
            big_g = rng.uniform(0.0, 0.5)
            params = ModelParams(n, g, big_g)
            w_dense = np.linalg.eigvalsh(dense_oracle(params))
            tri = build_hamiltonian(params)
            w_tri = eigh_tridiagonal(tri.diag, tri.offdiag, eigvals_only=True)
            scale = max(1.0, np.abs(w_tri).max())
            assert np.abs(w_dense - w_tri).max() <= 1e-10 * scale


def test_gauge_invariance_of_oracle_spectra():
    base = None
    for phase in (0.0, 0.7, np.pi / 2, np.pi, 5.1):
        params = ModelParams(10, -0.2, 0.3, big_g_phase=phase)
        w = np.linalg.eigvalsh(dense_oracle(params))
        if base is None:
            base = w
        else:
            assert np.abs(w - base).max() <= 1e-10 * max(1.0, np.abs(base).max())


def test_trace_identity():
    params = ModelParams(12, 0.21, 0.4)
    w = np.linalg.eigvalsh(dense_oracle(params))
    m = np.arange(7)
    assert w.sum() == pytest.approx((m + 0.21 * m ** 2).sum(), abs=1e-10)


def test_apply_hamiltonian_identity_like():
    h = build_hamiltonian(ModelParams(4, 0.0, 0.0))
    # overwrite-free check on a diagonal-only matrix with unit entries
    from trimode import TridiagonalHamiltonian

    ident = TridiagonalHamiltonian(np.ones(3), np.zeros(2))
    assert np.allclose(apply_hamiltonian(ident, [1.0, 2.0, 3.0]), [1.0, 2.0, 3.0])
    assert h.dim == 3


def test_apply_hamiltonian_basis_vector():
    h = build_hamiltonian(ModelParams(4, 0.0, 0.1))
    out = apply_hamiltonian(h, [1.0, 0.0, 0.0])
    assert np.allclose(out, [0.0, 0.1 * math.sqrt(12.0), 0.0])


def test_apply_hamiltonian_eigenvector_residual():
    params = ModelParams(40, 0.05, 0.12)
    h = build_hamiltonian(params)
    w, v = eigh_tridiagonal(h.diag, h.offdiag)
    for i in (0, 10, 20):
        resid = apply_hamiltonian(h, v[:, i]) - w[i] * v[:, i]
        assert np.abs(resid).max() <= 1e-9 * max(1.0, abs(w[i]))


def test_apply_hamiltonian_dimension_mismatch():
    h = build_hamiltonian(ModelParams(4, 0.0, 0.1))
    with pytest.raises(InvalidParameterError):
        apply_hamiltonian(h, [1.0, 2.0])
