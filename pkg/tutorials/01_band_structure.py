"""
Band structure of an air / MQW stack
====================================

A quarter-micron-scale stack of air and a GaAs/GaAlAs multiple quantum well
layer (eps = 13) has a strongly folded dispersion.  We tabulate the first
four bands, find where an 847 nm pulse sits, and look at how slowly it moves.
"""

# %%
# The crystal comes from the bundled configuration.
import math

import numpy as np

from kerr_nsgate import band_edges, band_scan, group_velocity, solve_k
from kerr_nsgate.bands import frequency_from_normalized, normalized_frequency
from kerr_nsgate.cli import load_config

cfg = load_config()
crystal = cfg.crystal()
L = crystal.period
print(f"period L = {L:.3e} m, fill fraction of A = {crystal.l_a / L:.2f}")

# %%
# Band edges in normalized frequency wL/2pi c.  Gaps are the intervals
# between the top of one band and the bottom of the next.
for n in range(1, 5):
    lo, hi = band_edges(n, crystal)
    print(f"band {n}: x in [{normalized_frequency(lo, crystal):.4f}, {normalized_frequency(hi, crystal):.4f}]")

# %%
# An 847 nm pulse lands near the bottom of the fourth band, close to the zone
# centre, where the band is flat and light is slow.
omega = 2 * math.pi * 3.00e8 / cfg.lambda0
point = solve_k(omega, crystal)
vg = group_velocity(point, crystal)
print(f"x = {normalized_frequency(omega, crystal):.4f}, band {point.band}, kL = {point.k * L:.4f}, v_g/c = {vg / 3.00e8:.4f}")

# %%
# Band 4 falls from its top at the zone centre, so lower frequencies sit at
# larger kL, and the group velocity grows quickly away from that edge.
for x in (0.780, 0.820, 0.840, 0.843):
    p = solve_k(frequency_from_normalized(x, crystal), crystal)
    print(f"x = {x:.3f}: kL = {p.k * L:.4f}, v_g/c = {group_velocity(p, crystal) / 3.00e8:.4f}")

# %%
# The reduced-zone diagram.  Plotting needs matplotlib; the numbers above do not.
table = band_scan(crystal, bands=4, samples=200)
try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, ax = plt.subplots(figsize=(4, 5))
    for n in range(1, table.bands + 1):
        k, w = table.band(n)
        ax.plot(k, w, color="k")
    ax.axhline(normalized_frequency(omega, crystal), ls="--", color="tab:red")
    ax.set_xlabel("kL")
    ax.set_ylabel("wL / 2 pi c")
    fig.savefig("band_structure.png", dpi=120, bbox_inches="tight")
    print("wrote band_structure.png")
else:
    k4, w4 = table.band(4)
    print(f"band 4 spans x = {w4.min():.4f} .. {w4.max():.4f} over {len(k4)} samples")
