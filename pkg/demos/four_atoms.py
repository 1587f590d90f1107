"""
Ghost spots of the four-atom rhombus
====================================

Four Gaussian atoms placed on a rhombus produce nine spots in the Wigner
distribution: the four atoms and five interferences at the pairwise
midpoints. Raising the Born-Jordan order damps the interferences between
atoms that differ in both time and frequency, while those between atoms
sharing a time or a frequency survive.

Run with ``python demos/four_atoms.py [output-dir]``.
"""

import math
import sys
from pathlib import Path

from bjlab import bjd, cross_term_report, ghost_count, rotate_constellation, synthesize
from bjlab.experiments import FOUR_ATOM_WIDTH, four_atom_constellation
from bjlab.io import render

out = Path(sys.argv[1] if len(sys.argv) > 1 else "demo-output")
out.mkdir(exist_ok=True)

# %%
# The rhombus: atoms at (20, .25), (40, .15), (40, .35) and (60, .25) on a
# 128-sample grid. A width of 13 samples keeps every spot separable.
c = four_atom_constellation()
f = synthesize(c)
print("atoms:", c.centers, "width", FOUR_ATOM_WIDTH)

# %%
# Count the spots above 10% of the peak for a few orders and save renders.
orders = (0, 1, 3, 5)
dists = {n: bjd(f, n).distribution for n in orders}
for n, d in dists.items():
    render(d, out / f"rhombus_n{n}")
print("ghost counts:", {n: ghost_count(d, 0.1, FOUR_ATOM_WIDTH) for n, d in dists.items()})

# %%
# Five spots remain: the four atoms plus the centre (40, .25), where the
# two on-axis pairs interfere. Region ratios show the same split more
# sharply with narrow atoms (width 4): the on-axis pairs keep most of their
# energy while the diagonal ones lose more than 95%. With wide atoms the
# on-axis interference spreads in delay, away from the axis, and is damped
# too, although it stays above the 10% line.
for width in (4.0, FOUR_ATOM_WIDTH):
    cw = four_atom_constellation(width=width)
    report = cross_term_report(synthesize(cw), cw, range(6))
    print(f"width {width:g}")
    for p in report.pairs:
        ratios = " ".join(f"{p['ratios'][str(n)]:.3f}" for n in range(6))
        print(f"  pair {p['pair']} {p['classification']:<13s} midpoint {p['midpoint']}  ratios {ratios}")

# %%
# Turning the rhombus by 30 degrees takes every pair off the axes. Now the
# interferences all fade and only the four atoms are left.
r = rotate_constellation(c, math.pi / 6)
g = synthesize(r)
rotated = {n: bjd(g, n).distribution for n in orders}
for n, d in rotated.items():
    render(d, out / f"rotated_n{n}")
print("rotated ghost counts:", {n: ghost_count(d, 0.1, FOUR_ATOM_WIDTH) for n, d in rotated.items()})
print("images written to", out.resolve())
