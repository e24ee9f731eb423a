#!/usr/bin/env python3
"""Spectra and adjacent-level spacings across the transition.

Eigenvalues E_i versus state index for N = 500 at several couplings G/d,
for symmetric (g/d = 0) and tilted (g/d = +-0.003) spectra.  The dotted
lines mark the energies of maximal level density, E = 0 and
E = N/2 + (g/d)(N/2)^2; once the coupling exceeds the classical threshold,
levels spill past them and the spacing profile develops sharp minima at
the crossings.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

import trimode as tm

N = 500

fig, axes = plt.subplots(2, 3, figsize=(13, 7), sharex="row")

for col, g in enumerate((0.0, 0.003, -0.003)):
    ax_e, ax_s = axes[0, col], axes[1, col]
    for big_g in (0.0005, 0.001, 0.002):
        params = tm.ModelParams(N, g, big_g)
        spec = tm.diagonalize(tm.build_hamiltonian(params))
        idx = np.arange(1, spec.dim + 1)
        ax_e.plot(idx, spec.eigenvalues, ".", ms=2.5, label=f"G/d = {big_g}")
        profile = tm.spacings(spec)
        ax_s.plot(idx[:-1], profile.spacings, ".", ms=2.5)
        minima = tm.cluster_minima(list(profile.minima_indices), gap=3)
        if minima and big_g == 0.002:
            print(f"g/d = {g:+.3f}, G/d = {big_g}: spacing-minimum clusters "
                  f"at indices {minima}")
    lo, up = tm.inflection_energies(tm.ModelParams(N, g, 0.001))
    ax_e.axhline(lo, ls=":", c="k", lw=0.8)
    ax_e.axhline(up, ls=":", c="k", lw=0.8)
    ax_e.set_title(f"g/d = {g}")
    ax_e.set_ylabel("E_i  (units of d)")
    ax_s.set_ylabel("E_{i+1} - E_i")
    ax_s.set_xlabel("state index i")

axes[0, 0].legend(fontsize=8)
fig.tight_layout()
fig.savefig("spectrum_and_spacings.png", dpi=160)
print("saved spectrum_and_spacings.png")

# the near-degenerate doublets of the tilted spectrum, and their collapse
for big_g in (0.0002, 0.0005, 0.001):
    spec = tm.diagonalize(tm.build_hamiltonian(tm.ModelParams(N, -0.003, big_g)))
    gaps = np.diff(spec.eigenvalues)
    narrow = int(np.count_nonzero(gaps < 0.2))
    print(f"g/d = -0.003, G/d = {big_g}: {narrow} narrow doublets, "
          f"smallest splitting {gaps.min():.3e}")

# population inversion inside the narrowest doublet
spec = tm.diagonalize(tm.build_hamiltonian(tm.ModelParams(N, -0.003, 0.0002)))
i = int(np.argmin(np.diff(spec.eigenvalues)))
for j in (i, i + 1):
    n0, n1, n2 = tm.mode_populations(spec, j)
    print(f"state {j}: E = {spec.eigenvalues[j]:.4f}, "
          f"<n0> = {n0:.1f}, <n1> = {n1:.1f}")
