"""Centred B-splines, sinc, and the order-n Born-Jordan kernels.

B-splines are held as exact piecewise polynomials with rational
coefficients. Each piece is a polynomial in the local variable
``u = t - breakpoints[i]`` on ``[breakpoints[i], breakpoints[i+1]]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
import numpy.typing as npt

from bjlab.errors import GridError, InvalidParameterError
from bjlab.transforms import ambiguity_axes

MAX_ORDER = 12
SINC_SERIES_CUTOFF = 1e-6


@dataclass(frozen=True)
class PiecewisePolynomial:
    """Polynomial pieces on consecutive intervals, zero outside.

    ``pieces[i]`` lists coefficients lowest degree first, in powers of
    ``t - breakpoints[i]``.
    """

    breakpoints: tuple[Fraction, ...]
    pieces: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.pieces) != len(self.breakpoints) - 1:
            raise InvalidParameterError("need exactly one piece per interval")
        if any(b >= c for b, c in zip(self.breakpoints, self.breakpoints[1:])):
            raise InvalidParameterError("breakpoints must be increasing")

    @property
    def support(self) -> tuple[Fraction, Fraction]:
        return self.breakpoints[0], self.breakpoints[-1]

    def integral(self) -> Fraction:
        """Exact integral over the support."""
        total = Fraction(0)
        for left, right, coeffs in zip(self.breakpoints, self.breakpoints[1:], self.pieces):
            h = right - left
            total += sum(c * h ** (p + 1) / (p + 1) for p, c in enumerate(coeffs))
        return total

    def __call__(self, t):
        return eval_pp(self, t)


def _antiderivative(coeffs: Sequence[Fraction]) -> list[Fraction]:
    return [Fraction(0)] + [c / (p + 1) for p, c in enumerate(coeffs)]


def _poly_sub(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    size = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (size - len(a))
    b = list(b) + [Fraction(0)] * (size - len(b))
    out = [x - y for x, y in zip(a, b)]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def bspline(n: int) -> PiecewisePolynomial:
    """The centred B-spline ``B_n`` supported on ``[-n/2, n/2]``.

    ``B_1`` is the indicator of ``[-1/2, 1/2]``; higher orders come from
    ``B_{n+1}(t) = C(t + 1/2) - C(t - 1/2)`` with ``C`` the antiderivative
    of ``B_n``. On unit knot intervals the shifted arguments land on the
    same local coordinate of adjacent pieces, so every step is exact.
    """
    if int(n) != n or not 1 <= n <= MAX_ORDER:
        raise InvalidParameterError(f"B-spline order must be in 1..{MAX_ORDER}, got {n}")
    n = int(n)
    pieces: list[list[Fraction]] = [[Fraction(1)]]
    for order in range(1, n):
        # cumulative mass at each left knot and the local antiderivatives
        anti = [_antiderivative(p) for p in pieces]
        mass = [Fraction(0)]
        for a in anti:
            mass.append(mass[-1] + sum(a))
        new = []
        for i in range(order + 1):
            upper = [mass[i]] + anti[i][1:] if i < order else [mass[order]]
            lower = [mass[i - 1]] + anti[i - 1][1:] if i >= 1 else [Fraction(0)]
            new.append(_poly_sub(upper, lower))
        pieces = new
    half = Fraction(n, 2)
    knots = tuple(-half + i for i in range(n + 1))
    return PiecewisePolynomial(knots, tuple(tuple(p) for p in pieces))


def eval_pp(p: PiecewisePolynomial, t):
    """Evaluate by Horner's rule on the containing piece; 0 off the support.

    At an interior breakpoint the right-hand piece is used.
    """
    scalar = np.ndim(t) == 0
    t = np.atleast_1d(np.asarray(t, dtype=float))
    knots = np.array([float(b) for b in p.breakpoints])
    idx = np.searchsorted(knots, t, side="right") - 1
    # the right end of the support belongs to the last piece
    idx = np.where(t == knots[-1], len(p.pieces) - 1, idx)
    inside = (idx >= 0) & (idx < len(p.pieces))
    out = np.zeros_like(t)
    for i, coeffs in enumerate(p.pieces):
        sel = inside & (idx == i)
        if not np.any(sel):
            continue
        u = t[sel] - knots[i]
        acc = np.zeros_like(u)
        for c in reversed(coeffs):
            acc = acc * u + float(c)
        out[sel] = acc
    return float(out[0]) if scalar else out


def sinc(t):
    """``sin(pi t) / (pi t)`` with a series branch for ``|t| < 1e-6``."""
    scalar = np.ndim(t) == 0
    t = np.atleast_1d(np.asarray(t, dtype=float))
    x = np.pi * t
    small = np.abs(t) < SINC_SERIES_CUTOFF
    out = np.empty_like(x)
    x2 = x[small] ** 2
    out[small] = 1.0 - x2 / 6.0 + x2 * x2 / 120.0
    big = ~small
    out[big] = np.sin(x[big]) / x[big]
    return float(out[0]) if scalar else out


@dataclass(frozen=True, eq=False)
class CohenKernelSpec:
    """Either the Born-Jordan kernel of a given order or custom samples."""

    order: int | None = None
    samples: npt.NDArray | None = None

    def __post_init__(self):
        if (self.order is None) == (self.samples is None):
            raise InvalidParameterError("give exactly one of order or samples")
        if self.order is not None and (
            int(self.order) != self.order or not 0 <= self.order <= MAX_ORDER
        ):
            raise InvalidParameterError(
                f"Born-Jordan order must be in 0..{MAX_ORDER}, got {self.order}"
            )

    @classmethod
    def bj_order(cls, n: int) -> "CohenKernelSpec":
        return cls(order=n)

    @classmethod
    def custom(cls, samples: npt.ArrayLike) -> "CohenKernelSpec":
        return cls(samples=np.asarray(samples))

    @property
    def label(self) -> str:
        return f"bj_order({self.order})" if self.order is not None else "custom"

    def describe(self) -> dict:
        if self.order is not None:
            return {"variant": "bj_order", "order": self.order,
                    "definition": "sinc(delay * doppler) ** order"}
        return {"variant": "custom", "shape": list(self.samples.shape)}


@dataclass(frozen=True, eq=False)
class KernelMatrix:
    """Kernel samples aligned with the ambiguity grid (row = delay)."""

    values: npt.NDArray
    spec: CohenKernelSpec

    @property
    def n(self) -> int:
        return self.values.shape[0]


def theta_grid(spec: CohenKernelSpec, n: int) -> KernelMatrix:
    """Sample a Cohen kernel on the ambiguity grid of a length-``n`` signal.

    For ``bj_order(k)`` the entry at delay ``d`` and doppler ``v`` is
    ``sinc(d * v) ** k``.
    """
    if spec.samples is not None:
        if spec.samples.shape != (n, n):
            raise GridError(
                f"custom kernel shape {spec.samples.shape} does not match ({n}, {n})"
            )
        return KernelMatrix(np.asarray(spec.samples), spec)
    delays, dopplers = ambiguity_axes(n)
    if spec.order == 0:
        return KernelMatrix(np.ones((n, n)), spec)
    base = sinc(np.outer(delays, dopplers))
    return KernelMatrix(base ** spec.order, spec)


def bspline_ft_check(n: int, xi=None, h: float = 1 / 64) -> float:
    """Max deviation between a Riemann-sum Fourier transform of ``B_n`` and ``sinc**n``.

    ``B_n`` is sampled at the midpoints of a step-``h`` grid over its support
    and the sum is evaluated for each ``xi`` (default: 801 points on [-4, 4]).
    """
    if not 1 <= n <= 8:
        raise InvalidParameterError(f"bspline_ft_check supports n in 1..8, got {n}")
    xi = np.linspace(-4.0, 4.0, 801) if xi is None else np.atleast_1d(np.asarray(xi, float))
    spline = bspline(n)
    cells = int(round(n / h))
    t = -n / 2 + (np.arange(cells) + 0.5) * h
    b = eval_pp(spline, t)
    ft = h * np.exp(-2j * np.pi * np.outer(xi, t)) @ b
    return float(np.max(np.abs(ft - sinc(xi) ** n)))
