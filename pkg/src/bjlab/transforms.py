"""Fourier machinery and the quadratic transforms.

Grid conventions used throughout the package, for a signal of even length N:

* time-frequency (TF) grid: rows are time samples ``n = 0..N-1``, columns
  are frequencies ``k / (2N)`` for ``k = 0..N-1`` (the band [0, 1/2)). The
  cell area is ``1 / (2N)``.
* ambiguity grid: rows are delays ``2 s(a)`` samples, columns dopplers
  ``s(b) / N`` cycles/sample, with the centred signed index
  ``s(a) = a`` for ``a < N/2`` and ``a - N`` otherwise. The cell area is
  ``2 / N``.

With these weights the discrete symplectic transform maps one grid onto the
other and applying it twice is exactly the identity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import numpy.typing as npt

from bjlab.errors import GridError, InvalidParameterError
from bjlab.signals import Signal

# Forward DFT carries no prefactor, the inverse carries 1/N.
DFT_NORMALIZATION = "forward: none, inverse: 1/N"


def signed_index(n: int) -> npt.NDArray[np.int64]:
    """The centred signed index map ``s(a)`` for ``a = 0..n-1``."""
    a = np.arange(n)
    return np.where(a < n // 2, a, a - n)


def ambiguity_axes(n: int) -> tuple[npt.NDArray, npt.NDArray]:
    """Return ``(delays, dopplers)`` of the ambiguity grid for length ``n``."""
    s = signed_index(n)
    return 2.0 * s, s / n


def tf_cell_area(n: int) -> float:
    return 1.0 / (2 * n)


def ambiguity_cell_area(n: int) -> float:
    return 2.0 / n


@dataclass(frozen=True, eq=False)
class TFDistribution:
    """A quadratic distribution sampled on the N x N time-frequency grid."""

    values: npt.NDArray
    kind: str = "custom"
    order: int | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        v = np.asarray(self.values)
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise GridError(f"TF distribution must be square, got {v.shape}")
        object.__setattr__(self, "values", v)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def time_step(self) -> float:
        return 1.0

    @property
    def freq_step(self) -> float:
        return 1.0 / (2 * self.n)

    @property
    def cell_area(self) -> float:
        return tf_cell_area(self.n)

    @property
    def times(self) -> npt.NDArray:
        return np.arange(self.n, dtype=float)

    @property
    def freqs(self) -> npt.NDArray:
        return np.arange(self.n) * self.freq_step

    @property
    def label(self) -> str:
        return self.kind if self.order is None else f"{self.kind}({self.order})"

    def metadata(self) -> dict:
        return {
            "kind": self.kind,
            "order": self.order,
            "N": self.n,
            "rows": "time index n, time = n * time_step samples",
            "columns": "frequency bin k, freq = k * freq_step cycles/sample",
            "time_step": self.time_step,
            "freq_step": self.freq_step,
            "cell_area": self.cell_area,
            "dft_normalization": DFT_NORMALIZATION,
            **self.meta,
        }


@dataclass(frozen=True, eq=False)
class AmbiguityMatrix:
    """Values on the centred (delay, doppler) grid; row = delay index."""

    values: npt.NDArray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        v = np.asarray(self.values)
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise GridError(f"ambiguity matrix must be square, got {v.shape}")
        object.__setattr__(self, "values", v)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def delays(self) -> npt.NDArray:
        return ambiguity_axes(self.n)[0]

    @property
    def dopplers(self) -> npt.NDArray:
        return ambiguity_axes(self.n)[1]

    @property
    def cell_area(self) -> float:
        return ambiguity_cell_area(self.n)

    def metadata(self) -> dict:
        return {
            "kind": "ambiguity",
            "N": self.n,
            "rows": "delay index a, delay = 2 s(a) samples",
            "columns": "doppler index b, doppler = s(b) / N cycles/sample",
            "signed_index": "s(a) = a if a < N/2 else a - N",
            "delay_step": 2.0,
            "doppler_step": 1.0 / self.n,
            "cell_area": self.cell_area,
            # value at the origin = signal energy = sum(W) * tf cell area
            "origin_normalization": tf_cell_area(self.n),
            "dft_normalization": DFT_NORMALIZATION,
            **self.meta,
        }


@dataclass(frozen=True, eq=False)
class STFTMatrix:
    values: npt.NDArray
    window: Signal
    hop: int
    nfft: int


def dft(v: npt.ArrayLike) -> npt.NDArray[np.complex128]:
    """Unnormalised forward DFT with kernel ``exp(-2 pi i j k / N)``."""
    v = np.asarray(v, dtype=np.complex128)
    if v.size < 1:
        raise InvalidParameterError("dft needs at least one sample")
    return np.fft.fft(v)


def idft(v: npt.ArrayLike) -> npt.NDArray[np.complex128]:
    v = np.asarray(v, dtype=np.complex128)
    if v.size < 1:
        raise InvalidParameterError("idft needs at least one sample")
    return np.fft.ifft(v)


def _zero_extended(x: npt.NDArray, idx: npt.NDArray) -> npt.NDArray:
    inside = (idx >= 0) & (idx < x.size)
    out = np.zeros(idx.shape, dtype=np.complex128)
    out[inside] = x[idx[inside]]
    return out


def stft(f: Signal, g: Signal, hop: int = 1, nfft: int | None = None) -> STFTMatrix:
    """Short-time Fourier transform with the window starting at ``r * hop``.

    ``values[r, k] = sum_y f[y] conj(g[y - r hop]) exp(-2 pi i y k / nfft)``
    with ``f`` zero-extended beyond its support.
    """
    n, width = f.n, g.n
    nfft = n if nfft is None else nfft
    if hop < 1:
        raise InvalidParameterError(f"hop must be positive, got {hop}")
    if width > nfft:
        raise InvalidParameterError(f"window length {width} exceeds nfft {nfft}")
    if nfft > n:
        raise InvalidParameterError(f"nfft {nfft} exceeds signal length {n}")

    starts = np.arange(0, n, hop)
    y = starts[:, None] + np.arange(width)[None, :]
    segments = _zero_extended(f.samples, y) * np.conj(g.samples)[None, :]
    k = np.arange(nfft)
    phase = np.exp(-2j * np.pi * np.outer(starts, k) / nfft)
    values = phase * np.fft.fft(segments, n=nfft, axis=1)
    return STFTMatrix(values, g, hop, nfft)


def spectrogram(f: Signal, g: Signal | None = None) -> TFDistribution:
    """Squared STFT modulus on the N x N time-frequency grid.

    The window defaults to the signal itself. Row ``n`` places the window's
    midpoint (index ``len(g) // 2``) at sample ``n``; columns are the
    frequencies ``k / (2N)`` of the TF grid.
    """
    g = f if g is None else g
    n, width = f.n, g.n
    if width > 2 * n:
        raise InvalidParameterError(f"window length {width} exceeds 2N = {2 * n}")
    shifts = np.arange(n) - width // 2
    y = shifts[:, None] + np.arange(width)[None, :]
    segments = _zero_extended(f.samples, y) * np.conj(g.samples)[None, :]
    spec = np.fft.fft(segments, n=2 * n, axis=1)[:, :n]
    return TFDistribution(
        np.abs(spec) ** 2,
        kind="spectrogram",
        meta={"window": g.label or "signal", "window_length": width},
    )


def cross_wigner(f: Signal, g: Signal) -> TFDistribution:
    """Discrete cross-Wigner distribution.

    ``W[n, k] = 2 sum_m f[n+m] conj(g[n-m]) exp(-2 pi i k m / N)`` for lags
    ``m = -N/2 .. N/2-1`` with zero extension; bin ``k`` is ``k / (2N)``
    cycles/sample. The factor 2 is the Jacobian of the lag ``y = 2m``.
    """
    if f.n != g.n:
        raise GridError(f"length mismatch: {f.n} vs {g.n}")
    n = f.n
    if n % 2:
        raise GridError(f"N must be even, got {n}")
    # column q holds lag m = s(q), so an FFT over q gives exp(-2 pi i k m / N)
    m = signed_index(n)
    rows = np.arange(n)[:, None]
    lagged = _zero_extended(f.samples, rows + m) * np.conj(
        _zero_extended(g.samples, rows - m)
    )
    values = 2.0 * np.fft.fft(lagged, axis=1)
    return TFDistribution(values, kind="cross-wigner")


def wigner(f: Signal) -> TFDistribution:
    w = cross_wigner(f, f).values
    peak = float(np.max(np.abs(w.real))) or 1.0
    residual = float(np.max(np.abs(w.imag))) / peak
    return TFDistribution(
        w.real.copy(), kind="wigner", order=0, meta={"imag_residual": residual}
    )


def symplectic_2d(values: npt.ArrayLike, domain: str = "tf") -> npt.NDArray:
    """Discrete symplectic Fourier transform of an N x N matrix.

    ``domain`` names the grid of the input: ``"tf"`` maps a time-frequency
    matrix to the ambiguity grid, ``"ambiguity"`` maps back. The transform is
    a 2-D DFT weighted by the input cell area followed by the index
    permutation ``out[a, b] = D[b, -a]`` that realises ``F(J zeta)``.
    """
    v = np.asarray(values)
    if v.ndim != 2 or v.shape[0] != v.shape[1]:
        raise GridError(f"symplectic transform needs a square matrix, got {v.shape}")
    n = v.shape[0]
    if domain == "tf":
        weight = tf_cell_area(n)
    elif domain == "ambiguity":
        weight = ambiguity_cell_area(n)
    else:
        raise InvalidParameterError(f"unknown domain {domain!r}")
    spectrum = np.fft.fft2(v)
    neg = (-np.arange(n)) % n
    return weight * spectrum.T[neg, :]


def ambiguity(f: Signal, g: Signal | None = None) -> AmbiguityMatrix:
    """Cross-ambiguity function as the symplectic transform of W(f, g)."""
    g = f if g is None else g
    return AmbiguityMatrix(symplectic_2d(cross_wigner(f, g).values, "tf"))


def moyal_product(wf: TFDistribution, wg: TFDistribution) -> complex:
    """Cell-area weighted inner product ``sum Wf conj(Wg) dA``."""
    if wf.n != wg.n:
        raise GridError("distributions live on different grids")
    return complex(np.sum(wf.values * np.conj(wg.values)) * wf.cell_area)


def calibrate_moyal_kappa(n: int = 128, width: float = 8.0) -> float:
    """Recompute the Moyal normalisation on a unit-energy centred Gaussian.

    ``kappa = 1 / <W phi, W phi>`` so that the calibration case has zero
    defect. The result is frozen in ``MOYAL_KAPPA``; this function exists so
    the frozen value can be audited.
    """
    from bjlab.signals import AtomSpec, gaussian

    phi = gaussian(n, AtomSpec(n / 2, 0.0, 1.0, width))
    phi = phi.with_samples(phi.samples / math.sqrt(phi.energy()))
    w = wigner(phi)
    return 1.0 / moyal_product(w, w).real


# Frozen output of calibrate_moyal_kappa() with its defaults.
MOYAL_KAPPA = 0.9999999999999996
