"""Cohen-class smoothing by multiplication in the ambiguity domain.

A Cohen distribution ``Q = W * theta`` is computed as
``Q = Fs(Theta . Fs(W))`` where ``Fs`` is the discrete symplectic transform
and ``Theta = Fs(theta)``; the transform being an involution makes the two
routes identical.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from bjlab.errors import GridError
from bjlab.signals import Signal
from bjlab.splines import CohenKernelSpec, KernelMatrix, sinc, theta_grid
from bjlab.transforms import (
    AmbiguityMatrix,
    TFDistribution,
    ambiguity_axes,
    cross_wigner,
    symplectic_2d,
    wigner,
)


@dataclass(frozen=True, eq=False)
class CohenResult:
    distribution: TFDistribution
    kernel_used: CohenKernelSpec
    ambiguity_snapshot: AmbiguityMatrix | None = None


def cohen_apply(
    f: Signal,
    g: Signal,
    spec: CohenKernelSpec,
    keep_ambiguity: bool = False,
) -> CohenResult:
    """Cross Cohen distribution of ``f`` and ``g`` under the kernel ``spec``.

    For ``f is g`` (or equal samples) the result is real. ``bj_order(0)``
    returns the Wigner distribution without touching the ambiguity domain.
    """
    if f.n != g.n:
        raise GridError(f"length mismatch: {f.n} vs {g.n}")
    auto = f is g or np.array_equal(f.samples, g.samples)
    kind = "custom" if spec.order is None else "cohen"
    w = wigner(f) if auto else cross_wigner(f, g)

    snapshot = None
    if spec.order == 0:
        values = w.values
        if keep_ambiguity:
            snapshot = AmbiguityMatrix(symplectic_2d(values, "tf"))
    else:
        kernel = theta_grid(spec, f.n)
        amb = symplectic_2d(w.values, "tf")
        if keep_ambiguity:
            snapshot = AmbiguityMatrix(amb)
        values = symplectic_2d(kernel.values * amb, "ambiguity")

    meta = {"kernel": spec.describe()}
    if auto and np.iscomplexobj(values):
        peak = float(np.max(np.abs(values.real))) or 1.0
        meta["imag_residual"] = float(np.max(np.abs(values.imag))) / peak
        values = values.real.copy()
    dist = TFDistribution(values, kind=kind, order=spec.order, meta=meta)
    return CohenResult(dist, spec, snapshot)


def bjd(f: Signal, n: int, keep_ambiguity: bool = False) -> CohenResult:
    """Born-Jordan distribution of order ``n`` (order 0 is the Wigner distribution)."""
    return cohen_apply(f, f, CohenKernelSpec.bj_order(n), keep_ambiguity)


def smoothing_multiplier_check(n: int, grid_size: int = 128) -> float:
    """Max of ``|(pi p)**n sinc(p)**n - sin(pi p)**n|`` over products ``p = delay * doppler``.

    This is the symbol identity behind applying the ``n``-th power of the
    mixed derivative ``d^2 / dx dw`` to the order-``n`` distribution.
    """
    delays, dopplers = ambiguity_axes(grid_size)
    p = np.outer(delays, dopplers)
    lhs = (np.pi * p) ** n * sinc(p) ** n
    rhs = np.sin(np.pi * p) ** n
    return float(np.max(np.abs(lhs - rhs)))


def fourier_multiplier_apply(d: TFDistribution, multiplier: KernelMatrix) -> TFDistribution:
    """Multiply ``d`` by ``multiplier`` in the ambiguity domain and transform back."""
    if multiplier.values.shape != d.values.shape:
        raise GridError(
            f"multiplier shape {multiplier.values.shape} != distribution {d.values.shape}"
        )
    amb = symplectic_2d(d.values, "tf")
    values = symplectic_2d(multiplier.values * amb, "ambiguity")
    return TFDistribution(values, kind="custom", meta={"multiplier": multiplier.spec.label})
