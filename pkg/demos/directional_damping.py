"""
Directional damping of interferences
====================================

The order-n Born-Jordan kernel ``sinc(delay * doppler) ** n`` equals one on
both ambiguity axes. Interferences of two atoms stacked in frequency
oscillate along time only, so their ambiguity content sits on an axis and
the kernel lets it through. Turning the same pair by 45 degrees moves that
content off the axes, where the kernel decays with every extra order.
"""

import numpy as np

from bjlab import bjd, cross_term_report, synthesize, theta_grid, CohenKernelSpec
from bjlab.experiments import two_atom_constellation

# %%
# The kernel itself: value at a few (delay, doppler) products for n = 1..5.
theta = {n: theta_grid(CohenKernelSpec.bj_order(n), 128).values for n in range(1, 6)}
for n, v in theta.items():
    print(f"n={n}: on axes {v[0, 17]:.3f}, at delay 8 / doppler 8/128 {v[4, 8]:.4f}")

# %%
# Two atoms at (64, .125) and (64, .375), and the same pair turned 45 degrees.
ratios = {}
for kind in ("axis", "diagonal"):
    c = two_atom_constellation(kind)
    pair = cross_term_report(synthesize(c), c, range(6)).pairs[0]
    ratios[kind] = [pair["ratios"][str(n)] for n in range(6)]
    print(f"{kind:<9s} centres {[(round(x, 2), round(w, 4)) for x, w in c.centers]}")

print("n    on-axis   diagonal")
for n in range(6):
    print(f"{n}    {ratios['axis'][n]:.4f}    {ratios['diagonal'][n]:.2e}")

# %%
# The on-axis interference keeps more than half of its energy at order 3,
# the diagonal one loses more than 99.9%.
assert ratios["axis"][3] > ratios["diagonal"][3]
assert np.all(np.diff(ratios["diagonal"]) < 0)
