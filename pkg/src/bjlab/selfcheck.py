"""Quick invariant suite printed by ``bjlab selfcheck``.

All checks run on grids of at most 64 points with a fixed random seed, so
the printed report is identical from run to run.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from bjlab import oracles
from bjlab.cohen import bjd, cohen_apply, smoothing_multiplier_check
from bjlab.interference import moyal_check
from bjlab.signals import AtomSpec, Signal, gaussian, tf_shift
from bjlab.splines import CohenKernelSpec, bspline, bspline_ft_check, theta_grid
from bjlab.transforms import (
    MOYAL_KAPPA,
    ambiguity,
    cross_wigner,
    dft,
    idft,
    stft,
    symplectic_2d,
    wigner,
)

SEED = 20240601


def _random_signal(rng, n):
    return Signal(rng.standard_normal(n) + 1j * rng.standard_normal(n))


def _rel(a, b):
    scale = max(float(np.max(np.abs(b))), 1e-300)
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b)))) / scale


def _moyal_pairs(n=64):
    def g(x, w, width):
        return gaussian(n, AtomSpec(x, w, 1.0, width))

    base = g(32, 0.0, 6)
    return [
        (base, base),
        (base, g(35, 0.02, 6)),
        (g(30, 0.1, 5), g(32, 0.12, 7)),
        (tf_shift(base, 3, 0.1), tf_shift(base, 3, 0.1)),
        (g(30, 0.25, 5), g(34, 0.24, 6)),
    ]


def checks(kappa: float = MOYAL_KAPPA):
    """Yield ``(name, value, tolerance)`` for each invariant."""
    rng = np.random.default_rng(SEED)

    v = rng.standard_normal(64) + 1j * rng.standard_normal(64)
    yield "dft round trip", _rel(idft(dft(v)), v), 1e-12
    yield "dft parseval", abs(np.sum(np.abs(dft(v)) ** 2) - 64 * np.sum(np.abs(v) ** 2)) / (64 * np.sum(np.abs(v) ** 2)), 1e-12

    f, g = _random_signal(rng, 16), _random_signal(rng, 16)
    yield "cross-wigner vs direct sum (N=16)", _rel(cross_wigner(f, g).values, oracles.cross_wigner_direct(f, g)), 1e-10
    yield "ambiguity vs direct sum (N=16)", _rel(ambiguity(f, g).values, oracles.ambiguity_direct(f, g)), 1e-10
    window = Signal(g.samples[:8])
    yield "stft vs direct sum (N=16)", _rel(stft(f, window, hop=2).values, oracles.stft_direct(f, window, 2, 16)), 1e-10

    f12, g12 = _random_signal(rng, 12), _random_signal(rng, 12)
    w12 = cross_wigner(f12, g12).values
    worst = 0.0
    for order in (1, 2, 3):
        spec = CohenKernelSpec.bj_order(order)
        q = cohen_apply(f12, g12, spec).distribution.values
        worst = max(worst, _rel(q, oracles.cohen_direct(w12, theta_grid(spec, 12).values)))
    yield "cohen vs direct convolution (N=12)", worst, 1e-10

    m = rng.standard_normal((64, 64)) + 1j * rng.standard_normal((64, 64))
    yield "symplectic involution (64x64)", _rel(symplectic_2d(symplectic_2d(m, "tf"), "ambiguity"), m), 1e-12

    f64 = _random_signal(rng, 64)
    yield "order 0 equals wigner", _rel(bjd(f64, 0).distribution.values, wigner(f64).values), 1e-12
    yield "auto distribution real (n=3)", bjd(f64, 3).distribution.meta["imag_residual"], 1e-10

    yield "multiplier identity n=1..6 (N=64)", max(smoothing_multiplier_check(k, 64) for k in range(1, 7)), 1e-10
    yield "b-spline fourier identity n=1..6", max(bspline_ft_check(k) for k in range(1, 7)), 1e-3
    yield "b-spline unit mass n=1..8", float(max(abs(bspline(k).integral() - Fraction(1)) for k in range(1, 9))), 0.0
    yield "moyal consistency (5 pairs)", max(moyal_check(a, b, kappa) for a, b in _moyal_pairs()), 1e-2


def run_selfcheck(kappa: float = MOYAL_KAPPA) -> tuple[list[str], bool]:
    lines, ok = [], True
    for name, value, tol in checks(kappa):
        passed = value <= tol
        ok &= passed
        lines.append(f"{'PASS' if passed else 'FAIL'}  {name:<40s} {value:.3e} (tol {tol:.0e})")
    lines.append(f"{'all checks passed' if ok else 'selfcheck FAILED'}")
    return lines, ok
