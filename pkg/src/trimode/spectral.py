"""Spectrum of the reduced Hamiltonian and its transition signatures.

Adjacent-level spacings develop minima at the energies of maximal level
density, E = 0 and E = N/2 + (g/d)(N/2)^2, which mirror the classical
separatrix energies.  States are labelled by where their eigenvalue falls
relative to that window.
"""

import enum
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .exceptions import InvalidParameterError, NonConvergenceError
from .model import apply_hamiltonian


class StateLabel(enum.Enum):
    """Phase label of an eigenstate from its energy alone."""

    MST = "MST"
    RO_BELOW = "RO_BELOW"
    RO_ABOVE = "RO_ABOVE"


@dataclass(frozen=True)
class Spectrum:
    """Sorted eigenvalues and matching eigenvectors (column i with value i)."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def __post_init__(self):
        w = np.ascontiguousarray(self.eigenvalues, dtype=float)
        v = np.ascontiguousarray(self.eigenvectors, dtype=float)
        w.setflags(write=False)
        v.setflags(write=False)
        object.__setattr__(self, "eigenvalues", w)
        object.__setattr__(self, "eigenvectors", v)

    @property
    def dim(self):
        return len(self.eigenvalues)

    @property
    def n_total(self):
        return 2 * (self.dim - 1)


@dataclass(frozen=True)
class SpacingProfile:
    """Adjacent differences E_{i+1} - E_i and their interior local minima."""

    spacings: np.ndarray
    minima_indices: tuple


def _fix_signs(vectors, tol=1e-12):
    # first component with non-negligible weight is made positive, for
    # reproducible output
    fixed = np.array(vectors, copy=True)
    for j in range(fixed.shape[1]):
        col = fixed[:, j]
        nz = np.flatnonzero(np.abs(col) > tol)
        lead = nz[0] if len(nz) else int(np.argmax(np.abs(col)))
        if col[lead] < 0:
            fixed[:, j] = -col
    return fixed


def diagonalize(h, tol=1e-12):
    """Full eigendecomposition of the reduced Hamiltonian.

    Parameters
    ----------
    h : TridiagonalHamiltonian
    tol : float
        Relative residual bound: every pair must satisfy
        ||H v - E v||_inf <= tol * max(1, ||H||) or the decomposition is
        rejected.

    Returns
    -------
    Spectrum
        Eigenvalues ascending; eigenvectors unit-norm with the first
        non-negligible component positive.
    """
    if tol <= 0:
        raise InvalidParameterError(f"tol must be positive, got {tol}")
    try:
        w, v = scipy.linalg.eigh_tridiagonal(h.diag, h.offdiag)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - defensive
        raise NonConvergenceError(f"tridiagonal eigensolver failed: {exc}") from exc

    order = np.argsort(w, kind="stable")
    w = w[order]
    v = _fix_signs(v[:, order])

    scale = max(1.0, float(np.abs(h.diag).max() + 2.0 * np.abs(h.offdiag).max(initial=0.0)))
    residual = h.diag[:, None] * v
    residual[1:] += h.offdiag[:, None] * v[:-1]
    residual[:-1] += h.offdiag[:, None] * v[1:]
    residual -= w[None, :] * v
    worst = float(np.abs(residual).max())
    if worst > tol * scale:
        raise NonConvergenceError(
            f"eigenpair residual {worst:.3e} exceeds {tol:.1e} * {scale:.3e}",
            info=worst,
        )
    return Spectrum(w, v)


def spacings(spectrum):
    """Spacing profile of a spectrum with at least two levels.

    Interior strict local minima are reported; a plateau of exactly equal
    spacings counts once, at its left edge.
    """
    w = spectrum.eigenvalues
    if len(w) < 2:
        raise InvalidParameterError("spectrum must contain at least two levels")
    gaps = np.diff(w)

    # run-length compress exact plateaus, then look for strict minima
    starts = [0]
    for i in range(1, len(gaps)):
        if gaps[i] != gaps[starts[-1]]:
            starts.append(i)
    values = [gaps[i] for i in starts]
    minima = []
    for r in range(1, len(values) - 1):
        if values[r] < values[r - 1] and values[r] < values[r + 1]:
            minima.append(starts[r])
    return SpacingProfile(gaps, tuple(minima))


def cluster_minima(indices, gap=3):
    """Group spacing-minimum indices into clusters of nearby entries.

    Consecutive minima separated by at most `gap` positions belong to the
    same cluster; returns a list of index tuples.
    """
    if not indices:
        return []
    clusters = [[indices[0]]]
    for i in indices[1:]:
        if i - clusters[-1][-1] <= gap:
            clusters[-1].append(i)
        else:
            clusters.append([i])
    return [tuple(c) for c in clusters]


def inflection_energies(params):
    """Energies of maximal level density, (0, N/2 + (g/d)(N/2)^2)."""
    half = params.n_total / 2.0
    return 0.0, half + params.g_ratio * half * half


def detect_degeneracies(spectrum, rel_tol=1e-8):
    """Adjacent pairs whose splitting is below rel_tol * spectral width.

    The model has no exact degeneracies at finite coupling (the tridiagonal
    matrix is unreduced), so callers should treat the tolerance as the
    operational definition and inspect the actual splittings via
    `spacings` when in doubt.
    """
    if rel_tol <= 0:
        raise InvalidParameterError(f"rel_tol must be positive, got {rel_tol}")
    w = spectrum.eigenvalues
    width = float(w[-1] - w[0])
    gaps = np.diff(w)
    return [(int(i), int(i) + 1) for i in np.flatnonzero(gaps < rel_tol * width)]


def mode_populations(spectrum, i):
    """Mean occupations (n0, n1, n2) of eigenstate i.

    The reduced basis ties the occupations together: n2 = n0 and
    n1 = N - 2 n0, so a single weighted sum suffices.
    """
    if not 0 <= i < spectrum.dim:
        raise InvalidParameterError(
            f"state index {i} out of range for dimension {spectrum.dim}"
        )
    weights = spectrum.eigenvectors[:, i] ** 2
    m = np.arange(spectrum.dim, dtype=float)
    n0 = float(np.dot(weights, m))
    return n0, spectrum.n_total - 2.0 * n0, n0


def classify_states(spectrum, params):
    """Label every eigenstate and report the outside-window fractions.

    RO_BELOW for E < 0, RO_ABOVE for E > N/2 + (g/d)(N/2)^2, MST between.
    Fractions are plain counts over N/2 + 1.
    """
    _, e_up = inflection_energies(params)
    w = spectrum.eigenvalues
    labels = []
    for e in w:
        if e < 0.0:
            labels.append(StateLabel.RO_BELOW)
        elif e > e_up:
            labels.append(StateLabel.RO_ABOVE)
        else:
            labels.append(StateLabel.MST)
    dim = spectrum.dim
    frac_below = labels.count(StateLabel.RO_BELOW) / dim
    frac_above = labels.count(StateLabel.RO_ABOVE) / dim
    return labels, frac_below, frac_above


def eigenvalues_only(h):
    """Eigenvalues without vectors; cheaper for sweeps over many couplings."""
    return scipy.linalg.eigh_tridiagonal(h.diag, h.offdiag, eigvals_only=True)


def residual_norm(h, spectrum, i):
    """Infinity norm of H v_i - E_i v_i, via the public mat-vec."""
    v = spectrum.eigenvectors[:, i]
    return float(np.abs(apply_hamiltonian(h, v) - spectrum.eigenvalues[i] * v).max())
