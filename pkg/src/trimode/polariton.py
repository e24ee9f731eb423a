"""Microcavity exciton-polariton parameters mapped onto the three-mode model.

Lower-polariton dispersion, Hopfield mixing amplitudes, the parametric
resonance condition selecting the pump wavevector, the polariton-polariton
coupling bookkeeping, and the resulting effective couplings (d, g, G).

Units: energies in meV, wavevectors in 1/um, lengths in um.  The squared
elementary charge in these units is e^2 ~ 1.44 meV um (Gaussian convention,
to be divided by the relative dielectric constant), so the `charge` field
defaults to sqrt(1.44) ~ 1.2.
"""

from dataclasses import dataclass, replace

import numpy as np

from .exceptions import (
    ComputationError,
    InvalidParameterError,
    NoMagicAngleError,
)

MOMENTUM_SELECTION = tuple(
    (i, j, k, l)
    for i in range(3)
    for j in range(3)
    for k in range(3)
    for l in range(3)
    if i + j == k + l
)


@dataclass(frozen=True)
class MicrocavityParams:
    """Physical cavity and exciton constants.

    Attributes
    ----------
    e_cav0 : float
        Cavity photon energy at k = 0 (meV).
    e_exc : float
        Exciton energy, taken flat in k (meV).
    rabi : float
        Rabi splitting energy (meV), > 0.
    cavity_curvature : float
        Parabolic cavity dispersion coefficient (meV um^2):
        E_cav(k) = e_cav0 + cavity_curvature * k^2.
    bohr_radius : float
        Two-dimensional exciton Bohr radius (um).
    dielectric : float
        Relative dielectric constant of the semiconductor.
    area : float
        Macroscopic quantization area (um^2).
    charge : float
        Elementary charge in sqrt(meV um) units.
    dispersion : tuple of (ndarray, ndarray), optional
        Tabulated lower-polariton dispersion (k, E_LP); when present it
        replaces the analytic two-level branch.
    """

    e_cav0: float
    e_exc: float
    rabi: float
    cavity_curvature: float
    bohr_radius: float = 0.01
    dielectric: float = 12.9
    area: float = 100.0
    charge: float = 1.2
    dispersion: tuple = None

    def __post_init__(self):
        if self.rabi <= 0:
            raise InvalidParameterError(f"rabi must be > 0, got {self.rabi}")
        if self.area <= 0 or self.bohr_radius <= 0:
            raise InvalidParameterError("area and bohr_radius must be > 0")
        if self.dispersion is not None:
            k, e = (np.asarray(a, dtype=float) for a in self.dispersion)
            if k.ndim != 1 or k.shape != e.shape or len(k) < 4:
                raise InvalidParameterError(
                    "tabulated dispersion needs matching 1-d arrays, >= 4 rows"
                )
            if np.any(np.diff(k) <= 0):
                raise InvalidParameterError("tabulated k values must be increasing")
            k.setflags(write=False)
            e.setflags(write=False)
            object.__setattr__(self, "dispersion", (k, e))
            from scipy.interpolate import CubicSpline

            object.__setattr__(self, "_spline", CubicSpline(k, e))


def default_microcavity(delta0=0.0):
    """GaAs-flavoured defaults with the k = 0 detuning set to `delta0` (meV)."""
    e_exc = 1485.0
    return MicrocavityParams(
        e_cav0=e_exc + delta0,
        e_exc=e_exc,
        rabi=6.0,
        cavity_curvature=1.5,
    )


def hopfield_u(detuning, rabi):
    """Exciton fraction amplitude of the lower polariton.

    u = sqrt[(D + sqrt(D^2 + W^2)) / (2 sqrt(D^2 + W^2))] with D the
    cavity-exciton detuning and W the Rabi energy; strictly inside (0, 1)
    and increasing in D.
    """
    if rabi <= 0:
        raise InvalidParameterError(f"rabi must be > 0, got {rabi}")
    detuning = np.asarray(detuning, dtype=float)
    root = np.sqrt(detuning ** 2 + rabi ** 2)
    u = np.sqrt((detuning + root) / (2.0 * root))
    return float(u) if u.ndim == 0 else u


def cavity_energy(k, mc):
    k = np.asarray(k, dtype=float)
    e = mc.e_cav0 + mc.cavity_curvature * k ** 2
    return float(e) if e.ndim == 0 else e


def _detuning_from_lp(e_lp, mc):
    """Invert the two-level branch: D = (W^2 - 4 w^2)/(4 w), w = e_exc - E_LP."""
    w = mc.e_exc - np.asarray(e_lp, dtype=float)
    if np.any(w <= 0):
        raise InvalidParameterError(
            "tabulated dispersion must lie strictly below the exciton energy"
        )
    return (mc.rabi ** 2 - 4.0 * w ** 2) / (4.0 * w)


def lp_energy(k, mc):
    """Lower-polariton branch energy at wavevector k.

    Analytic two-level form E_LP = (E_cav + E_exc - sqrt(D^2 + W^2)) / 2
    with a parabolic cavity and flat exciton, or cubic-spline interpolation
    of a tabulated dispersion when one is attached to the parameters (the
    resonance mismatch vanishes quadratically at k = 0, so the interpolant
    must be smooth there or root finding picks up interpolation noise).
    """
    k = np.asarray(k, dtype=float)
    if mc.dispersion is not None:
        kt, _ = mc.dispersion
        if np.any(k < kt[0]) or np.any(k > kt[-1]):
            raise InvalidParameterError(
                "wavevector outside the tabulated dispersion range"
            )
        e = mc._spline(k)
    else:
        ec = cavity_energy(k, mc)
        d = ec - mc.e_exc
        e = 0.5 * (ec + mc.e_exc - np.sqrt(d ** 2 + mc.rabi ** 2))
    return float(e) if e.ndim == 0 else e


def lp_detuning(k, mc):
    """Cavity-exciton detuning at k, consistent with the dispersion in use."""
    if mc.dispersion is not None:
        return _detuning_from_lp(lp_energy(k, mc), mc)
    d = cavity_energy(k, mc) - mc.e_exc
    return float(d) if np.ndim(d) == 0 else d


def _resonance_mismatch(k, mc):
    return 2.0 * lp_energy(k, mc) - lp_energy(0.0, mc) - lp_energy(2.0 * k, mc)


def magic_wavevector(mc, k_max=None, scan_points=2000):
    """Pump wavevector where 2 E_LP(k_p) = E_LP(0) + E_LP(2 k_p).

    The mismatch is scanned for a sign change on (0, k_max] and the root is
    then bisected to 1e-10 relative.  k_max defaults to a few times the
    anticrossing scale sqrt(rabi / curvature), capped so 2 k stays inside a
    tabulated dispersion when one is used.
    """
    if k_max is None:
        if mc.dispersion is not None:
            k_max = float(mc.dispersion[0][-1]) / 2.0
        elif mc.cavity_curvature > 0:
            k_max = 4.0 * np.sqrt(mc.rabi / mc.cavity_curvature)
        else:
            k_max = 10.0
    ks = np.linspace(k_max / scan_points, k_max, scan_points)
    f = _resonance_mismatch(ks, mc)
    scale = max(abs(f).max(), 0.0)
    if scale < 1e-12 * mc.rabi:
        raise NoMagicAngleError(
            "resonance mismatch is degenerate (flat dispersion): every k is "
            "trivially resonant"
        )
    signs = np.sign(f)
    flips = np.flatnonzero(np.diff(signs) != 0)
    if len(flips) == 0:
        raise NoMagicAngleError(
            f"no resonance crossing on (0, {k_max:g}] for these parameters"
        )
    a, b = float(ks[flips[0]]), float(ks[flips[0] + 1])
    fa = _resonance_mismatch(a, mc)
    while b - a > 1e-10 * max(1.0, b):
        mid = 0.5 * (a + b)
        fm = _resonance_mismatch(mid, mc)
        if fa * fm <= 0.0:
            b = mid
        else:
            a, fa = mid, fm
    return 0.5 * (a + b)


@dataclass(frozen=True)
class ModeSet:
    """Signal, pump, idler momenta with their energies and Hopfield factors."""

    wavevectors: np.ndarray
    energies: np.ndarray
    hopfield: np.ndarray

    def __post_init__(self):
        k = np.asarray(self.wavevectors, dtype=float)
        if k[0] != 0.0 or k[2] != 2.0 * k[1]:
            raise InvalidParameterError(
                "mode momenta must be (0, k_p, 2 k_p) exactly"
            )


def mode_set(mc, k_p):
    """Evaluate the three scattering modes at the given pump wavevector."""
    k = np.array([0.0, k_p, 2.0 * k_p])
    return ModeSet(
        k,
        np.asarray(lp_energy(k, mc)),
        hopfield_u(np.asarray(lp_detuning(k, mc)), mc.rabi),
    )


def interaction_scale(mc):
    """Bare polariton-polariton interaction V0 = 6 e^2 a_exc / (eps A), meV."""
    return 6.0 * mc.charge ** 2 * mc.bohr_radius / (mc.dielectric * mc.area)


@dataclass(frozen=True)
class CouplingTable:
    """Normal-ordered couplings g[i, j, k, l] (meV), nonzero only for i+j = k+l."""

    values: np.ndarray

    def __post_init__(self):
        v = np.ascontiguousarray(self.values, dtype=float)
        if v.shape != (3, 3, 3, 3):
            raise InvalidParameterError("coupling table must be 3x3x3x3")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __getitem__(self, idx):
        return self.values[idx]


def coupling_table_from_mixing(v0, u):
    """Accumulate two-body couplings from the Hopfield factors of the modes.

    Every scattering process annihilates modes (c, d) and transfers
    momentum q between them; enumerating all momentum triples whose four
    legs stay inside {0, k_p, 2 k_p} and weighting each with
    (1/2) v0 u_i u_j u_c u_d builds the normal-ordered table.  Momentum
    conservation i + j = c + d holds channel by channel.
    """
    u = np.asarray(u, dtype=float)
    if u.shape != (3,):
        raise InvalidParameterError("need exactly three Hopfield factors")
    table = np.zeros((3, 3, 3, 3))
    for c in range(3):
        for d in range(3):
            for q in range(-2, 3):
                i = c + q
                j = d - q
                if 0 <= i <= 2 and 0 <= j <= 2:
                    table[i, j, c, d] += 0.5 * v0 * u[i] * u[j] * u[c] * u[d]
    return CouplingTable(table)


def coupling_table(mc, k_p):
    """Coupling table for the scattering modes at pump wavevector k_p."""
    modes = mode_set(mc, k_p)
    return coupling_table_from_mixing(interaction_scale(mc), modes.hopfield)


@dataclass(frozen=True)
class EffectiveParams:
    """Effective model couplings (meV) and their dimensionless ratios."""

    delta: float
    g: float
    big_g: float

    @property
    def g_ratio(self):
        return self.g / self.delta

    @property
    def big_g_ratio(self):
        return self.big_g / self.delta


def effective_params(table, energies, n_total):
    """Combine mode energies and couplings into the three model parameters.

    d = E0 + E2 - 2 E1 - g0000 - g2222 + 2 g1111 + 4 N (g1212 + g0101 - g1111)
    g = -8 g1212 + g0000 + 4 g0202 - 8 g0101 + 4 g1111 + g2222
    G = 2 g1102

    all in meV with the table entries g_ijkl already in energy units.
    A vanishing d leaves the ratios undefined and is rejected.
    """
    e0, e1, e2 = (float(e) for e in energies)
    t = table.values
    delta = (
        e0 + e2 - 2.0 * e1
        - t[0, 0, 0, 0] - t[2, 2, 2, 2] + 2.0 * t[1, 1, 1, 1]
        + 4.0 * n_total * (t[1, 2, 1, 2] + t[0, 1, 0, 1] - t[1, 1, 1, 1])
    )
    g = (
        -8.0 * t[1, 2, 1, 2] + t[0, 0, 0, 0] + 4.0 * t[0, 2, 0, 2]
        - 8.0 * t[0, 1, 0, 1] + 4.0 * t[1, 1, 1, 1] + t[2, 2, 2, 2]
    )
    big_g = 2.0 * t[1, 1, 0, 2]
    if delta == 0.0:
        raise ComputationError(
            "effective detuning is zero; the coupling ratios are undefined"
        )
    return EffectiveParams(delta, g, big_g)


@dataclass(frozen=True)
class DetuningSweep:
    """Per-detuning pipeline results; invalid rows mark missing resonances."""

    delta0: np.ndarray
    big_g_ratio: np.ndarray
    supercritical: np.ndarray
    valid: np.ndarray

    def __len__(self):
        return len(self.delta0)


def detuning_sweep(mc_base, delta0_grid, n_total, freeze_kp=False):
    """Full pipeline G/d versus the k = 0 detuning.

    Each grid point shifts the cavity energy so that
    E_cav(0) - E_exc = delta0, re-solves the resonance wavevector (unless
    `freeze_kp` pins it at the first resonant point), and evaluates the
    coupling ratios.  Points without a resonance are recorded as invalid
    rows rather than aborting the sweep.  `supercritical` flags
    G/d > (4/N) * 1/8, the threshold where the classical lower separatrix
    appears.
    """
    if mc_base.dispersion is not None:
        raise InvalidParameterError(
            "detuning sweeps shift the analytic cavity branch; a tabulated "
            "dispersion cannot be re-detuned"
        )
    grid = np.asarray(delta0_grid, dtype=float)
    m = len(grid)
    out_ratio = np.full(m, np.nan)
    valid = np.zeros(m, dtype=bool)
    threshold = 0.5 / n_total
    frozen_kp = None
    for idx, d0 in enumerate(grid):
        mc = replace(mc_base, e_cav0=mc_base.e_exc + float(d0))
        try:
            if freeze_kp and frozen_kp is not None:
                kp = frozen_kp
            else:
                kp = magic_wavevector(mc)
                if freeze_kp:
                    frozen_kp = kp
            modes = mode_set(mc, kp)
            eff = effective_params(
                coupling_table(mc, kp), modes.energies, n_total
            )
        except (NoMagicAngleError, ComputationError):
            continue
        out_ratio[idx] = eff.big_g_ratio
        valid[idx] = True
    supercritical = np.where(valid, out_ratio > threshold, False)
    return DetuningSweep(grid, out_ratio, supercritical, valid)


def load_microcavity_config(path):
    """Read MicrocavityParams from a key = value text file.

    Lines are `key = value` with `#` comments; keys match the dataclass
    fields.  A `dispersion_file` entry names a two-column CSV (k, E_LP)
    relative to the config file's directory.
    """
    import os

    values = {}
    dispersion_file = None
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise InvalidParameterError(
                    f"{path}:{lineno}: expected 'key = value', got {raw.strip()!r}"
                )
            key, _, val = (s.strip() for s in line.partition("="))
            if key == "dispersion_file":
                dispersion_file = val
                continue
            try:
                values[key] = float(val)
            except ValueError as exc:
                raise InvalidParameterError(
                    f"{path}:{lineno}: non-numeric value for {key}: {val!r}"
                ) from exc
    dispersion = None
    if dispersion_file is not None:
        table_path = os.path.join(os.path.dirname(os.path.abspath(path)), dispersion_file)
        data = np.loadtxt(table_path, delimiter=",", comments="#", ndmin=2)
        if data.shape[1] != 2:
            raise InvalidParameterError(
                f"{table_path}: expected two columns (k, E_LP)"
            )
        dispersion = (data[:, 0], data[:, 1])
    try:
        return MicrocavityParams(dispersion=dispersion, **values)
    except TypeError as exc:
        raise InvalidParameterError(f"{path}: {exc}") from exc
