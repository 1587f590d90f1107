"""
The identities behind the kernels
=================================

A walk through the exact facts the package leans on: B-splines and their
sinc-power Fourier transforms, the symbol identity behind the mixed
derivative of the order-n distribution, Moyal's formula on the discrete
grid, and the scaling of the Wigner norm of a dilated Gaussian.
"""

import math

import numpy as np

from bjlab import AtomSpec, bspline, bspline_ft_check, eval_pp, gaussian, moyal_check, smoothing_multiplier_check, tf_shift
from bjlab.interference import dilation_norms, dilation_scaling
from bjlab.transforms import MOYAL_KAPPA, calibrate_moyal_kappa

# %%
# B-splines are exact piecewise polynomials; B_3 has three quadratic pieces.
b3 = bspline(3)
print("B_3 pieces (lowest degree first):", [[str(c) for c in p] for p in b3.pieces])
print("B_3(0) =", eval_pp(b3, 0.0), " integral =", b3.integral())

# %%
# A midpoint Riemann sum of B_n reproduces sinc ** n. The error drops fast
# with n since smoother splines are easier to integrate.
for n in range(1, 7):
    print(f"n={n}: max |FT B_n - sinc^n| = {bspline_ft_check(n):.2e}")

# %%
# (pi p)^n sinc(p)^n = sin(pi p)^n on the whole ambiguity grid.
print("multiplier identity:", max(smoothing_multiplier_check(n, 128) for n in range(1, 7)))

# %%
# Moyal: the cell-weighted inner product of two Wigner distributions
# equals |<f, g>|^2. The frozen constant is reproduced by recalibrating.
print("kappa frozen", MOYAL_KAPPA, "recalibrated", calibrate_moyal_kappa())
f = gaussian(128, AtomSpec(60, 0.1, 1.0, 8))
g = gaussian(128, AtomSpec(66, 0.12, 1.0, 10))
print("Moyal defect:", moyal_check(f, g), moyal_check(tf_shift(f, 4, 0.05), g))

# %%
# ||W(phi(lambda .))||_2 falls like 1 / lambda; at lambda = 1 it is 1/sqrt(2).
lams = [0.5, 1.0, 2.0]
print("norms", np.round(dilation_norms(lams, 512), 6), "1/sqrt(2) =", round(1 / math.sqrt(2), 6))
print("fitted exponent", dilation_scaling(lams, 512))
