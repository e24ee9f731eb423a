#!/usr/bin/env python3
"""Phase diagram: relative eigenstate index versus coupling.

For each g/d, the lower curve is the fraction of states with E < 0 and the
upper curve is one minus the fraction with E above the upper window edge;
self-trapped states fill the band between the two curves.  Hollow markers
show the same boundaries computed purely from classical phase-space areas.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

import trimode as tm

N = 500
grid = np.linspace(0.0, 0.004, 81)

fig, ax = plt.subplots(figsize=(7.5, 5.5))
colors = {0.003: "tab:red", 0.0: "tab:blue",
          -0.002: "tab:green", -0.003: "tab:purple"}

for g, color in colors.items():
    quantum = tm.boundary_curves(N, g, grid)
    ax.plot(grid, quantum.frac_below, "-", c=color, lw=1.2, label=f"g/d = {g}")
    ax.plot(grid, 1.0 - quantum.frac_above, "-", c=color, lw=1.2)
    semicl = tm.semiclassical_curves(N, g, grid[::8], resolution=256)
    ax.plot(grid[::8], semicl.frac_below, "o", mfc="none", c=color, ms=4)
    ax.plot(grid[::8], 1.0 - semicl.frac_above, "o", mfc="none", c=color, ms=4)
    onset = tm.onset_coupling(quantum, "below")
    print(f"g/d = {g:+.3f}: oscillation phase sets in at G/d = {onset} "
          f"(classical value {4.0 / N * 0.125})")

ax.set_xlabel("G/d")
ax.set_ylabel("relative state index i / i_max")
ax.set_ylim(0, 1)
ax.legend(fontsize=8)
ax.set_title("self-trapped band between the curves; lines quantum, circles classical")
fig.tight_layout()
fig.savefig("phase_diagram.png", dpi=160)
print("saved phase_diagram.png")
