"""Relative-index phase boundaries versus coupling, with a semiclassical twin.

For each coupling the spectrum is split at E = 0 and at
E = N/2 + (g/d)(N/2)^2; the fractions of states outside that window trace
the two boundary curves of the phase diagram.  The same curves follow from
pure phase-space geometry by measuring the area fractions of the closed
orbit regions, which serves as an independent cross-check.
"""

from dataclasses import dataclass

import numpy as np

from . import classical
from .exceptions import InvalidParameterError
from .model import ModelParams, build_hamiltonian
from .spectral import eigenvalues_only, inflection_energies


@dataclass(frozen=True)
class PhaseDiagram:
    """Boundary data at fixed g/d: per coupling, the outside-window fractions.

    `frac_below` is the relative index i/i_max of the last state with
    E < 0; plotted as-is it is the lower curve, and 1 - frac_above is the
    upper one, so the band between them is the self-trapped region.
    """

    n_total: int
    g_ratio: float
    couplings: np.ndarray
    frac_below: np.ndarray
    frac_above: np.ndarray

    def __len__(self):
        return len(self.couplings)


def boundary_curves(n_total, g_ratio, coupling_grid):
    """Diagonalize along the grid and record the state-count fractions."""
    grid = np.asarray(coupling_grid, dtype=float)
    if grid.ndim != 1 or len(grid) == 0:
        raise InvalidParameterError("coupling grid must be a non-empty 1-d array")
    if np.any(np.diff(grid) <= 0):
        raise InvalidParameterError("coupling grid must be strictly increasing")
    below = np.empty(len(grid))
    above = np.empty(len(grid))
    for k, c in enumerate(grid):
        params = ModelParams(n_total, g_ratio, float(c))
        w = eigenvalues_only(build_hamiltonian(params))
        _, e_up = inflection_energies(params)
        dim = len(w)
        below[k] = np.count_nonzero(w < 0.0) / dim
        above[k] = np.count_nonzero(w > e_up) / dim
    return PhaseDiagram(n_total, g_ratio, grid, below, above)


def semiclassical_curves(n_total, g_ratio, coupling_grid, resolution=256):
    """Same table from classical area fractions instead of state counts."""
    grid = np.asarray(coupling_grid, dtype=float)
    below = np.empty(len(grid))
    above = np.empty(len(grid))
    for k, c in enumerate(grid):
        cp = classical.rescale(n_total, g_ratio, float(c))
        below[k] = classical.region_fraction(
            cp, classical.OrbitClass.CLOSED_LOWER, resolution
        )
        above[k] = classical.region_fraction(
            cp, classical.OrbitClass.CLOSED_UPPER, resolution
        )
    return PhaseDiagram(n_total, g_ratio, grid, below, above)


def onset_coupling(diagram, which="below"):
    """First coupling where a boundary fraction grows past the edge-state floor.

    The ground level is pushed marginally below E = 0 by second-order level
    repulsion for any nonzero coupling (and its mirror marginally above the
    upper window edge), so a single outside state carries no phase
    information.  The onset is therefore the first grid point where more
    than one state per edge lies outside the window, which is where the
    outside fractions start to grow with coupling.

    Returns None when the grid never reaches the onset.
    """
    if which not in ("below", "above"):
        raise InvalidParameterError(f"which must be 'below' or 'above', got {which!r}")
    frac = diagram.frac_below if which == "below" else diagram.frac_above
    dim = diagram.n_total // 2 + 1
    past = np.flatnonzero(frac * dim > 1.5)  # at least two states outside
    if len(past) == 0:
        return None
    return float(diagram.couplings[past[0]])
