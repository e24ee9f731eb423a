"""Reduced basis and effective Hamiltonian of the three-mode boson model.

Three bosonic modes with conserved total number N and conserved population
imbalance between the outer modes (fixed to zero here) leave a single degree
of freedom: the occupation m of mode 0.  The basis states are

    |m> = |n0=m, n1=N-2m, n2=m>,   m = 0 .. N/2,

and in units of the detuning energy the Hamiltonian is tridiagonal,

    H[m, m]   = m + (g/d) m^2
    H[m, m+1] = (G/d) (m+1) sqrt((N-2m)(N-2m-1)),

where g/d and G/d are the two dimensionless couplings.  A complex phase of
the pair coupling G is pure gauge in this sector and is carried as metadata;
`dense_oracle` builds the same matrix by explicit ladder-operator action and
honours the phase, providing an independent validation path.
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import InvalidParameterError

ORACLE_MAX_N = 64


def _validate_n_total(n_total):
    if not isinstance(n_total, (int, np.integer)):
        raise InvalidParameterError(f"n_total must be an integer, got {n_total!r}")
    if n_total < 2 or n_total % 2 != 0:
        raise InvalidParameterError(
            f"n_total must be even and >= 2, got {n_total}"
        )


@dataclass(frozen=True)
class ModelParams:
    """Dimensionless model definition in units where the detuning is 1.

    Attributes
    ----------
    n_total : int
        Total boson number N.  Must be even and >= 2.
    g_ratio : float
        Self-interaction ratio g/d (any sign).
    big_g_ratio : float
        Magnitude of the pair-coupling ratio |G|/d, >= 0.
    big_g_phase : float
        Phase of the complex pair coupling, radians.  Spectra do not
        depend on it (gauge freedom of the reduced sector).
    """

    n_total: int
    g_ratio: float
    big_g_ratio: float
    big_g_phase: float = 0.0

    def __post_init__(self):
        _validate_n_total(self.n_total)
        if not np.isfinite(self.g_ratio):
            raise InvalidParameterError(f"g_ratio must be finite, got {self.g_ratio}")
        if not np.isfinite(self.big_g_ratio) or self.big_g_ratio < 0:
            raise InvalidParameterError(
                f"big_g_ratio must be finite and >= 0, got {self.big_g_ratio}"
            )

    @property
    def dim(self):
        """Dimension of the reduced basis, N/2 + 1."""
        return self.n_total // 2 + 1


@dataclass(frozen=True)
class BasisState:
    """One reduced-basis state, labelled by the mode-0 occupation m."""

    m: int
    n_total: int

    @property
    def n0(self):
        return self.m

    @property
    def n1(self):
        return self.n_total - 2 * self.m

    @property
    def n2(self):
        return self.m

    @property
    def occupations(self):
        return (self.n0, self.n1, self.n2)


def build_basis(n_total):
    """Enumerate the reduced basis states in ascending m.

    Parameters
    ----------
    n_total : int
        Total boson number, even, >= 2.

    Returns
    -------
    list of BasisState
        States m = 0 .. N/2; length N/2 + 1.
    """
    _validate_n_total(n_total)
    return [BasisState(m, n_total) for m in range(n_total // 2 + 1)]


@dataclass(frozen=True)
class TridiagonalHamiltonian:
    """Symmetric tridiagonal Hamiltonian in the reduced basis, units of d.

    `diag` has length N/2 + 1 and `offdiag` length N/2; both arrays are
    write-locked after construction and safe to share between workers.
    """

    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self):
        diag = np.ascontiguousarray(self.diag, dtype=float)
        offdiag = np.ascontiguousarray(self.offdiag, dtype=float)
        if diag.ndim != 1 or offdiag.ndim != 1 or len(offdiag) != len(diag) - 1:
            raise InvalidParameterError(
                "offdiag must be one element shorter than diag"
            )
        diag.setflags(write=False)
        offdiag.setflags(write=False)
        object.__setattr__(self, "diag", diag)
        object.__setattr__(self, "offdiag", offdiag)

    @property
    def dim(self):
        return len(self.diag)

    @property
    def n_total(self):
        return 2 * (len(self.diag) - 1)


def build_hamiltonian(params):
    """Assemble the reduced-sector Hamiltonian for the given couplings.

    The result is independent of `big_g_phase`: only |G|/d enters the
    off-diagonal, which fixes the real gauge.
    """
    n = params.n_total
    m = np.arange(params.dim, dtype=float)
    diag = m + params.g_ratio * m * m
    mm = m[:-1]
    offdiag = params.big_g_ratio * (mm + 1.0) * np.sqrt((n - 2 * mm) * (n - 2 * mm - 1.0))
    return TridiagonalHamiltonian(diag, offdiag)


def _pair_transfer_amplitude(m, n_total):
    """Amplitude of a0+ a2+ a1 a1 acting on |m>, by explicit ladder action."""
    n1 = n_total - 2 * m
    if n1 < 2:
        return 0.0
    # a1 a1 |..., n1, ...> -> sqrt(n1) sqrt(n1 - 1); then a0+ and a2+ each
    # contribute sqrt(m + 1) on their modes.
    amp = np.sqrt(float(n1)) * np.sqrt(float(n1 - 1))
    amp *= np.sqrt(float(m + 1)) * np.sqrt(float(m + 1))
    return amp


def dense_oracle(params):
    """Dense Hermitian matrix over the reduced basis, built step by step.

    Independent validation path for `build_hamiltonian`: the pair-transfer
    element is obtained by acting with annihilation/creation operators on
    the occupation tuples rather than from the closed-form expression, and
    the complex phase of G is applied to the raising part.

    Parameters
    ----------
    params : ModelParams
        Model definition with n_total <= 64 (oracle scale).

    Returns
    -------
    ndarray, complex
        Hermitian (dim x dim) matrix.
    """
    if params.n_total > ORACLE_MAX_N:
        raise InvalidParameterError(
            f"dense oracle is restricted to n_total <= {ORACLE_MAX_N}, "
            f"got {params.n_total}"
        )
    basis = build_basis(params.n_total)
    dim = len(basis)
    big_g = params.big_g_ratio * np.exp(1j * params.big_g_phase)
    h = np.zeros((dim, dim), dtype=complex)
    for state in basis:
        m = state.m
        h[m, m] = state.n0 + params.g_ratio * state.n0 ** 2
        amp = _pair_transfer_amplitude(m, params.n_total)
        if amp != 0.0:
            # raising part G a0+ a2+ a1^2 maps |m> -> |m+1>; target must
            # stay inside the closed reduced sector
            assert m + 1 < dim
            h[m + 1, m] += big_g * amp
            h[m, m + 1] += np.conj(big_g) * amp
    return h


def apply_hamiltonian(h, v):
    """Tridiagonal matrix-vector product H v.

    Parameters
    ----------
    h : TridiagonalHamiltonian
    v : array_like
        Real vector of length h.dim.

    Returns
    -------
    ndarray
    """
    v = np.asarray(v, dtype=float)
    if v.shape != (h.dim,):
        raise InvalidParameterError(
            f"vector length {v.shape} does not match basis dimension {h.dim}"
        )
    out = h.diag * v
    out[1:] += h.offdiag * v[:-1]
    out[:-1] += h.offdiag * v[1:]
    return out
