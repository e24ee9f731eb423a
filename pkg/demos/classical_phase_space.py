#!/usr/bin/env python3
"""Phase-space portraits of the thermodynamic-limit Hamiltonian.

Level sets of h(j_z, phi) for the parameter sets where the orbit topology
changes: the appearance of the lower and upper separatrices, and the
degenerate open-orbit regime at negative g'/d'.  Critical points are
marked with black dots.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

import trimode as tm

CASES = [
    (0.0, 0.125), (0.0, 0.25),
    (0.375, 0.3125), (0.375, 0.375),
    (-0.375, 0.0125), (-0.375, 0.0625),
    (-0.375, 0.125), (-0.375, 0.15),
]

fig, axes = plt.subplots(4, 2, figsize=(9, 14))

for ax, (gp, big_gp) in zip(axes.flat, CASES):
    cp = tm.ClassicalParams(gp, big_gp)
    lo, hi = tm.classical.energy_range(cp)
    for e in np.linspace(lo + 1e-6, hi - 1e-6, 24):
        for curve in tm.level_set(float(e), cp, 301).curves:
            style = "-" if curve.closed else "--"
            ax.plot(curve.points[:, 1], curve.points[:, 0], style,
                    lw=0.6, c="tab:blue" if curve.closed else "tab:gray")
    cps = tm.critical_points(cp)
    for p in list(cps.interior) + list(cps.boundary_saddles):
        if p.exists:
            ax.plot([p.phi, 2 * np.pi - p.phi], [p.jz, p.jz], "ko", ms=4)
    lower, upper = tm.separatrix_thresholds(gp)
    ax.set_title(f"g'/d' = {gp}, G'/d' = {big_gp} "
                 f"(thresholds {lower}, {upper})", fontsize=9)
    ax.set_xlim(0, 2 * np.pi)
    ax.set_ylim(-1, 1)
    ax.set_xlabel("phi")
    ax.set_ylabel("j_z")

fig.tight_layout()
fig.savefig("classical_phase_space.png", dpi=150)
print("saved classical_phase_space.png")

# orbit-class area fractions across the lower threshold
for big_gp in (0.1, 0.125, 0.2, 0.25, 0.375):
    cp = tm.ClassicalParams(0.0, big_gp)
    fractions = {cls.value: tm.region_fraction(cp, cls, 256)
                 for cls in tm.OrbitClass}
    print(f"G'/d' = {big_gp}: {fractions}")
