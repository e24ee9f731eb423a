#!/usr/bin/env python3
"""Ground-state signatures of the transition and its order.

Mode-0 population and linear entropy versus coupling; the ground energy
against the classical minimum; the discontinuous second derivative of the
energy; the entropy-derivative peaks sharpening with system size on the
rescaled axis G'/d'.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

import trimode as tm

N = 500
grid = np.linspace(0.0, 0.003, 61)
table = tm.coupling_sweep(N, 0.0, grid)

fig, axes = plt.subplots(2, 2, figsize=(11, 8))

ax = axes[0, 0]
ax.plot(grid, table.n0_mean, label="<n0>")
ax.plot(grid, table.linear_entropy * 250, label="S x 250")
ax.axvline(0.001, ls=":", c="k")
ax.set_xlabel("G/d")
ax.legend()
ax.set_title("population and entropy, N = 500")

ax = axes[0, 1]
classical_min = [tm.classical_ground_energy(tm.rescale(N, 0.0, float(c)))
                 for c in grid]
ax.plot(grid * N / 4, table.energy / (N / 4), "o", ms=3,
        label="E_gs / (N/4)")
ax.plot(grid * N / 4, classical_min, "-", label="classical minimum")
ax.set_xlabel("G'/d'")
ax.legend()
ax.set_title("quantum vs classical ground energy")

ax = axes[1, 0]
d2 = tm.finite_difference(table, "energy", 2)
ax.plot(grid, d2)
ax.axvline(0.001, ls=":", c="k")
ax.set_xlabel("G/d")
ax.set_title("d2 E_gs / d(G/d)2: discontinuous at the transition")

ax = axes[1, 1]
gp_grid = np.linspace(0.05, 0.35, 61)
for rows in [tm.finite_size_scaling([n], 0.0, gp_grid) for n in (200, 500, 1000)]:
    r = rows[0]
    sweep = tm.coupling_sweep(r.n_total, 0.0, 4.0 * gp_grid / r.n_total)
    ds = np.abs(tm.finite_difference(sweep, "linear_entropy", 1)) * 4.0 / r.n_total
    ax.plot(gp_grid, ds, label=f"N = {r.n_total}")
    print(f"N = {r.n_total}: |dS/dG'| peaks at G'/d' = {r.peak_location:.4f} "
          f"with height {r.peak_height:.1f}")
ax.axvline(0.125, ls=":", c="k")
ax.set_xlabel("G'/d'")
ax.legend()
ax.set_title("entropy derivative: sharpening with N")

fig.tight_layout()
fig.savefig("ground_state_transition.png", dpi=160)
print("saved ground_state_transition.png")

est = tm.critical_coupling(N, 0.0, grid)
print(f"entropy-derivative peak at G/d = {est.coupling:.6f} "
      f"(classical threshold 0.001)")

d1 = tm.finite_difference(table, "energy", 1)
i_star = int(np.argmax(np.abs(tm.finite_difference(table, "linear_entropy", 1))))
in1, out1 = tm.jump_statistics(d1, i_star, 9)
in2, out2 = tm.jump_statistics(d2, i_star, 9)
print(f"first-derivative step ratio {in1 / out1:.2f} (continuous), "
      f"second-derivative step ratio {in2 / out2:.2f} (jump): second order")
