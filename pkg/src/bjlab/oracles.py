"""Slow reference implementations used to cross-check the FFT code paths.

Every function here evaluates its defining sum literally, without FFTs, so
it is only usable for small grids (N <= 16 or so).
"""

from __future__ import annotations

import cmath

import numpy as np

from bjlab.signals import Signal
from bjlab.transforms import signed_index


def _at(x, i):
    return x[i] if 0 <= i < len(x) else 0.0


def cross_wigner_direct(f: Signal, g: Signal) -> np.ndarray:
    """Triple loop over time, frequency bin and lag."""
    n = f.n
    fs, gs = list(f.samples), list(g.samples)
    out = np.zeros((n, n), dtype=complex)
    for t in range(n):
        for k in range(n):
            acc = 0j
            for m in range(-n // 2, n // 2):
                acc += _at(fs, t + m) * np.conj(_at(gs, t - m)) * cmath.exp(-2j * cmath.pi * k * m / n)
            out[t, k] = 2 * acc
    return out


def ambiguity_direct(f: Signal, g: Signal) -> np.ndarray:
    """``A[a, b] = sum_t f[t + s(a)] conj(g[t - s(a)]) exp(-2 pi i s(b) t / N)``.

    Row ``a`` is the delay ``2 s(a)``, column ``b`` the doppler ``s(b) / N``.
    """
    n = f.n
    s = signed_index(n)
    fs, gs = list(f.samples), list(g.samples)
    out = np.zeros((n, n), dtype=complex)
    for a in range(n):
        for b in range(n):
            acc = 0j
            for t in range(n):
                acc += _at(fs, t + s[a]) * np.conj(_at(gs, t - s[a])) * cmath.exp(
                    -2j * cmath.pi * s[b] * t / n
                )
            out[a, b] = acc
    return out


def symplectic_direct(values, weight: float) -> np.ndarray:
    """``out[a, b] = weight * sum_{p,q} F[p, q] exp(-2 pi i (b p - a q) / N)``."""
    v = np.asarray(values)
    n = v.shape[0]
    p = np.arange(n)
    out = np.zeros((n, n), dtype=complex)
    for a in range(n):
        for b in range(n):
            phase = np.exp(-2j * np.pi * (b * p[:, None] - a * p[None, :]) / n)
            out[a, b] = weight * np.sum(v * phase)
    return out


def cohen_direct(w: np.ndarray, theta: np.ndarray) -> np.ndarray:
    """Cohen distribution as a circular 2-D convolution in the TF domain.

    ``Q = dA * (W conv K)`` where ``K`` is the symplectic transform of the
    kernel samples (from the ambiguity grid) and ``dA = 1/(2N)``.
    """
    n = w.shape[0]
    kernel = symplectic_direct(theta, 2.0 / n)
    idx = np.arange(n)
    out = np.zeros((n, n), dtype=complex)
    for t in range(n):
        for k in range(n):
            shifted = kernel[np.ix_((t - idx) % n, (k - idx) % n)]
            out[t, k] = np.sum(w * shifted)
    return out / (2 * n)


def stft_direct(f: Signal, g: Signal, hop: int, nfft: int) -> np.ndarray:
    n, width = f.n, g.n
    starts = range(0, n, hop)
    out = np.zeros((len(starts), nfft), dtype=complex)
    for r, start in enumerate(starts):
        for k in range(nfft):
            acc = 0j
            for y in range(n):
                j = y - start
                if 0 <= j < width:
                    acc += f.samples[y] * np.conj(g.samples[j]) * cmath.exp(-2j * cmath.pi * y * k / nfft)
            out[r, k] = acc
    return out
