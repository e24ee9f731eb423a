"""Thermodynamic-limit phase space of the three-mode model.

In rescaled units the classical Hamiltonian on the cylinder
(j_z, phi) in [-1, 1] x [0, 2pi) reads

    h(j_z, phi) = (j_z + 1) + gp (j_z + 1)^2 + 4 Gp (1 - j_z^2) cos(phi),

with gp = (N/4)(g/d) and Gp = (N/4)(G/d).  The boundary lines j_z = -1 and
j_z = +1 sit at the constant energies 0 and 2 + 4 gp; saddle points appear
on them once Gp exceeds 1/8 and |1 + 4 gp|/8 respectively, and the level
sets at the boundary energies then separate open from closed orbits.
"""

import enum
from dataclasses import dataclass

import numpy as np

from .exceptions import InvalidParameterError


@dataclass(frozen=True)
class ClassicalParams:
    """Rescaled couplings gp = g'/d' and big_gp = G'/d' (energies in d')."""

    gp: float
    big_gp: float

    def __post_init__(self):
        if not np.isfinite(self.gp):
            raise InvalidParameterError(f"gp must be finite, got {self.gp}")
        if not np.isfinite(self.big_gp) or self.big_gp < 0:
            raise InvalidParameterError(
                f"big_gp must be finite and >= 0, got {self.big_gp}"
            )


@dataclass(frozen=True)
class PhasePoint:
    """A point (j_z, phi) on the phase-space cylinder."""

    jz: float
    phi: float


class OrbitClass(enum.Enum):
    CLOSED_LOWER = "CLOSED_LOWER"
    OPEN = "OPEN"
    CLOSED_UPPER = "CLOSED_UPPER"


@dataclass(frozen=True)
class CriticalPoint:
    """One critical-point candidate of h, with its existence flag.

    `kind` is 'max', 'min' or 'saddle'.  Interior candidates (phi = 0 or
    pi) are classified from the analytic Hessian; for gp < 0 and small Gp
    the phi = pi candidate is an interior saddle rather than an extremum,
    and is reported as such instead of being forced into max/min.
    Boundary candidates (j_z = +-1) are always saddles of the level-set
    topology.  For exists=False the candidate location is still reported
    (it may lie outside the cylinder) and the energy is NaN.
    """

    phi: float
    jz: float
    energy: float
    kind: str
    exists: bool


@dataclass(frozen=True)
class CriticalPointSet:
    """Interior candidates (phi = 0, pi families) and boundary saddles."""

    interior: tuple
    boundary_saddles: tuple

    @property
    def existing_extrema(self):
        return tuple(
            p for p in self.interior if p.exists and p.kind in ("max", "min")
        )

    @property
    def existing_saddles(self):
        return tuple(p for p in self.boundary_saddles if p.exists)


def rescale(n_total, g_ratio, big_g_ratio):
    """Map model ratios onto classical ones: gp = (N/4)(g/d), Gp = (N/4)(G/d)."""
    if n_total <= 0:
        raise InvalidParameterError(f"n_total must be positive, got {n_total}")
    return ClassicalParams(n_total * g_ratio / 4.0, n_total * big_g_ratio / 4.0)


def _h(jz, phi, cp):
    x = jz + 1.0
    return x + cp.gp * x * x + 4.0 * cp.big_gp * (1.0 - jz * jz) * np.cos(phi)


def energy(point, cp):
    """Evaluate h at a phase-space point; 2pi-periodic in phi."""
    if not -1.0 <= point.jz <= 1.0:
        raise InvalidParameterError(f"j_z = {point.jz} outside [-1, 1]")
    return float(_h(point.jz, point.phi, cp))


def boundary_energies(cp):
    """Energies of the boundary lines, (h at j_z = -1, h at j_z = +1)."""
    return 0.0, 2.0 + 4.0 * cp.gp


def _interior_candidate(cp, cos_phi, phi):
    """Stationary point of h along phi = const with cos(phi) = +-1."""
    denom = 8.0 * cp.big_gp * cos_phi - 2.0 * cp.gp
    if denom == 0.0:
        # measure-zero degenerate line 8 Gp = +-2 gp: no isolated candidate
        return CriticalPoint(phi, np.nan, np.nan, "degenerate", False)
    # stationary condition 1 + 2 gp (jz + 1) - 8 Gp jz cos(phi) = 0
    jz = (1.0 + 2.0 * cp.gp) / denom
    exists = bool(abs(jz) < 1.0)
    if not exists:
        return CriticalPoint(phi, float(jz), np.nan, "none", False)
    # analytic Hessian at phi in {0, pi}: mixed term vanishes
    h_jj = 2.0 * cp.gp - 8.0 * cp.big_gp * cos_phi
    h_pp = -4.0 * cp.big_gp * (1.0 - jz * jz) * cos_phi
    if h_jj < 0.0 and h_pp < 0.0:
        kind = "max"
    elif h_jj > 0.0 and h_pp > 0.0:
        kind = "min"
    else:
        kind = "saddle"
    return CriticalPoint(phi, float(jz), float(_h(jz, phi, cp)), kind, True)


def _boundary_candidate(cp, jz, cos_arg):
    if abs(cos_arg) <= 1.0:
        phi = float(np.arccos(cos_arg))
        return CriticalPoint(phi, jz, float(_h(jz, phi, cp)), "saddle", True)
    return CriticalPoint(np.nan, jz, np.nan, "saddle", False)


def critical_points(cp):
    """All critical points of h for Gp > 0.

    Interior families sit at phi = 0 and phi = pi with
    j_z = -+(1 + 2 gp)/(8 Gp -+ 2 gp); boundary saddles at
    (arccos[(1 + 4 gp)/(8 Gp)], +1) and (arccos[-1/(8 Gp)], -1).
    Saddle phi values are reported in [0, pi]; the mirror point 2pi - phi
    is implied by the cos symmetry.
    """
    if cp.big_gp == 0.0:
        raise InvalidParameterError(
            "critical points are undefined for Gp = 0 (phi-independent h)"
        )
    interior = (
        _interior_candidate(cp, 1.0, 0.0),
        _interior_candidate(cp, -1.0, float(np.pi)),
    )
    boundary = (
        _boundary_candidate(cp, 1.0, (1.0 + 4.0 * cp.gp) / (8.0 * cp.big_gp)),
        _boundary_candidate(cp, -1.0, -1.0 / (8.0 * cp.big_gp)),
    )
    return CriticalPointSet(interior, boundary)


def separatrix_thresholds(gp):
    """Couplings where the lower/upper boundary saddles first exist.

    Lower: Gp = 1/8 for any gp.  Upper: Gp = |1 + 4 gp|/8.
    """
    return 0.125, abs(1.0 + 4.0 * gp) / 8.0


def energy_range(cp):
    """Attainable (min, max) of h over the cylinder.

    The extrema lie on the boundary lines or at interior critical points;
    for Gp = 0 the phi-independent quadratic is scanned directly.
    """
    lo, hi = boundary_energies(cp)
    values = [lo, hi]
    if cp.big_gp == 0.0:
        if cp.gp != 0.0:
            x_vertex = -1.0 / (2.0 * cp.gp)  # stationary point of x + gp x^2
            if 0.0 <= x_vertex <= 2.0:
                values.append(x_vertex + cp.gp * x_vertex * x_vertex)
    else:
        for p in critical_points(cp).interior:
            if p.exists and p.kind in ("max", "min"):
                values.append(p.energy)
    return min(values), max(values)


def classify_energy(e, cp):
    """Orbit class of an attainable energy.

    CLOSED_LOWER below h(j_z = -1) = 0, CLOSED_UPPER above
    h(j_z = +1) = 2 + 4 gp, OPEN between.
    """
    lo, hi = energy_range(cp)
    if not lo <= e <= hi:
        raise InvalidParameterError(
            f"energy {e} is outside the attainable range [{lo}, {hi}]"
        )
    b_lo, b_hi = boundary_energies(cp)
    if e < b_lo:
        return OrbitClass.CLOSED_LOWER
    if e > b_hi:
        return OrbitClass.CLOSED_UPPER
    return OrbitClass.OPEN


def classical_ground_energy(cp):
    """Global minimum of h: boundary energies and interior extrema compete.

    Exact evaluation; no iterative optimisation is involved.
    """
    values = list(boundary_energies(cp))
    if cp.big_gp > 0.0:
        for p in critical_points(cp).interior:
            if p.exists and p.kind in ("max", "min"):
                values.append(p.energy)
    else:
        values.append(energy_range(cp)[0])
    return min(values)


@dataclass(frozen=True)
class LevelCurve:
    """Polyline of one level-set branch; points are rows (j_z, phi)."""

    points: np.ndarray
    closed: bool


@dataclass(frozen=True)
class LevelSet:
    """Level-set curves; `degenerate` marks the Gp = 0 vertical foliation."""

    energy: float
    curves: tuple
    degenerate: bool = False


def _cos_phi_on_level(e, jz, cp):
    """cos(phi) solving h = e at given j_z, with boundary limits patched in."""
    num = e - (jz + 1.0) - cp.gp * (jz + 1.0) ** 2
    den = 4.0 * cp.big_gp * (1.0 - jz * jz)
    with np.errstate(divide="ignore", invalid="ignore"):
        r = num / den
    lo, hi = boundary_energies(cp)
    # at j_z = -+1 the quotient is 0/0 exactly on the separatrix energies
    if abs(jz + 1.0) < 1e-14:
        r = -1.0 / (8.0 * cp.big_gp) if abs(e - lo) < 1e-12 else np.inf
    elif abs(jz - 1.0) < 1e-14:
        r = (1.0 + 4.0 * cp.gp) / (8.0 * cp.big_gp) if abs(e - hi) < 1e-12 else np.inf
    return r


def level_set(e, cp, n_samples=256):
    """Level curves of h at energy e, assembled from both phi branches.

    For each sampled j_z with |cos phi| <= 1 the two solutions
    phi = arccos(r) and 2pi - arccos(r) are emitted; contiguous j_z runs
    are stitched into polylines that go up one branch and back down the
    other.  A curve is closed when both ends terminate at branch-merging
    points (cos phi = +-1); it is open when it ends on a boundary line.

    Gp = 0 degenerates into vertical lines j_z = const, returned with the
    `degenerate` flag set.
    """
    if n_samples < 16:
        raise InvalidParameterError(f"n_samples must be >= 16, got {n_samples}")
    lo, hi = energy_range(cp)
    if not lo <= e <= hi:
        raise InvalidParameterError(
            f"energy {e} is outside the attainable range [{lo}, {hi}]"
        )

    if cp.big_gp == 0.0:
        curves = []
        phis = np.linspace(0.0, 2.0 * np.pi, n_samples, endpoint=False)
        # roots of x + gp x^2 = e with x = j_z + 1 in [0, 2]
        if cp.gp == 0.0:
            roots = [e]
        else:
            disc = 1.0 + 4.0 * cp.gp * e
            roots = []
            if disc >= 0.0:
                sq = np.sqrt(disc)
                roots = [(-1.0 + sq) / (2.0 * cp.gp), (-1.0 - sq) / (2.0 * cp.gp)]
        for x in roots:
            if -1e-12 <= x <= 2.0 + 1e-12:
                jz = min(1.0, max(-1.0, x - 1.0))
                pts = np.column_stack([np.full_like(phis, jz), phis])
                curves.append(LevelCurve(pts, closed=True))
        return LevelSet(e, tuple(curves), degenerate=True)

    jz_grid = np.linspace(-1.0, 1.0, n_samples)
    # make sure level sets that collapse onto an interior extremum are seen
    # even when the extremum falls between samples
    snap = [
        p.jz
        for p in critical_points(cp).interior
        if p.exists
        and p.kind in ("max", "min")
        and abs(e - p.energy) <= 1e-9 * max(1.0, abs(e))
    ]
    if snap:
        jz_grid = np.unique(np.concatenate([jz_grid, np.array(snap)]))
    r = np.array([_cos_phi_on_level(e, j, cp) for j in jz_grid])
    valid = np.abs(r) <= 1.0 + 1e-12

    # each maximal valid run contributes one curve: up the arccos branch and
    # back down the mirrored one.  An end where the neighbouring sample has
    # |cos phi| > 1 is a branch-merging turning point at phi = 0 (r -> +1)
    # or phi = pi (r -> -1); an end on a boundary line is a termination.
    # A loop is contractible (closed orbit) only when both ends merge at the
    # same turning value; opposite values mean the curve winds around the
    # cylinder, i.e. an open orbit covering the full phi range.
    curves = []
    n = len(jz_grid)
    i = 0
    while i < n:
        if not valid[i]:
            i += 1
            continue
        j = i
        while j + 1 < n and valid[j + 1]:
            j += 1
        seg_j = jz_grid[i : j + 1]
        seg_r = np.clip(r[i : j + 1], -1.0, 1.0)
        phi_up = np.arccos(seg_r)

        low_merge = None
        if i > 0:
            low_merge = 1.0 if r[i - 1] > 1.0 else -1.0
        elif abs(abs(seg_r[0]) - 1.0) < 1e-9:
            low_merge = float(np.sign(seg_r[0]))
        high_merge = None
        if j < n - 1:
            high_merge = 1.0 if r[j + 1] > 1.0 else -1.0
        elif abs(abs(seg_r[-1]) - 1.0) < 1e-9:
            high_merge = float(np.sign(seg_r[-1]))

        if len(seg_j) == 1 and low_merge is not None and high_merge is not None:
            curves.append(LevelCurve(np.array([[seg_j[0], phi_up[0]]]), closed=True))
        else:
            up = np.column_stack([seg_j, phi_up])
            down = np.column_stack([seg_j[::-1], 2.0 * np.pi - phi_up[::-1]])
            closed = (
                low_merge is not None
                and high_merge is not None
                and low_merge == high_merge
            )
            curves.append(LevelCurve(np.vstack([up, down]), closed=closed))
        i = j + 1
    return LevelSet(e, tuple(curves))


def region_fraction(cp, orbit_class, resolution=256):
    """Fraction of the uniform (j_z, phi) measure in one orbit class.

    Midpoint quadrature on a resolution x resolution grid; the three
    class fractions sum to 1 exactly by construction.
    """
    if resolution < 64:
        raise InvalidParameterError(
            f"resolution must be >= 64 per axis, got {resolution}"
        )
    jz = -1.0 + (np.arange(resolution) + 0.5) * (2.0 / resolution)
    phi = (np.arange(resolution) + 0.5) * (2.0 * np.pi / resolution)
    h_vals = _h(jz[:, None], phi[None, :], cp)
    b_lo, b_hi = boundary_energies(cp)
    if orbit_class is OrbitClass.CLOSED_LOWER:
        count = np.count_nonzero(h_vals < b_lo)
    elif orbit_class is OrbitClass.CLOSED_UPPER:
        count = np.count_nonzero(h_vals > b_hi)
    else:
        count = np.count_nonzero((h_vals >= b_lo) & (h_vals <= b_hi))
    return count / h_vals.size
