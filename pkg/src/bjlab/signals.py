"""Discrete signals: Gaussian atoms, time-frequency shifts and WAV ingestion.

All coordinates use the sample grid directly: time in samples, frequency in
cycles/sample. The atom ``(x, w)`` therefore denotes a Gaussian centred at
sample ``x`` modulated to ``w`` cycles/sample.
"""

from __future__ import annotations

import math
import wave
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Sequence

import numpy as np
import numpy.typing as npt

from bjlab.errors import (
    ConstellationError,
    ConstellationOutOfBandError,
    InvalidParameterError,
    ShiftOutOfRangeError,
    WavFormatError,
)

# Relative tail level above which a Gaussian is flagged as touching the grid edge.
EDGE_TAIL_LIMIT = 1e-12


@dataclass(frozen=True, eq=False)
class Signal:
    """A finite complex sequence of even length with grid metadata."""

    samples: npt.NDArray[np.complex128]
    sample_period: float = 1.0
    label: str = ""
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        x = np.array(self.samples, dtype=np.complex128)
        if x.ndim != 1:
            raise InvalidParameterError("signal samples must be 1-D")
        if x.size < 2 or x.size % 2:
            raise InvalidParameterError(
                f"signal length must be even and >= 2, got {x.size}"
            )
        if not np.all(np.isfinite(x)):
            raise InvalidParameterError("signal contains NaN or Inf samples")
        if not (math.isfinite(self.sample_period) and self.sample_period > 0):
            raise InvalidParameterError("sample_period must be positive")
        x.setflags(write=False)
        object.__setattr__(self, "samples", x)

    def __len__(self) -> int:
        return self.samples.size

    @property
    def n(self) -> int:
        return self.samples.size

    def energy(self) -> float:
        return float(np.sum(np.abs(self.samples) ** 2))

    def with_samples(self, samples, label: str | None = None) -> "Signal":
        return Signal(
            samples,
            sample_period=self.sample_period,
            label=self.label if label is None else label,
        )


@dataclass(frozen=True)
class AtomSpec:
    """A time-frequency shifted Gaussian.

    ``width`` is the Gaussian scale in samples: width 1 reproduces
    ``exp(-pi t**2)`` sampled at unit period.
    """

    time_center: float
    freq_center: float
    amplitude: complex = 1.0
    width: float = 4.0

    def __post_init__(self):
        vals = (self.time_center, self.freq_center, self.width)
        if not all(math.isfinite(v) for v in vals) or not np.isfinite(
            complex(self.amplitude)
        ):
            raise InvalidParameterError(f"non-finite atom parameter in {self}")
        if self.width <= 0:
            raise InvalidParameterError(f"atom width must be positive, got {self.width}")
        if not 0 <= self.freq_center < 0.5:
            raise InvalidParameterError(
                f"freq_center must lie in [0, 1/2), got {self.freq_center}"
            )


@dataclass(frozen=True)
class Constellation:
    atoms: tuple[AtomSpec, ...]
    n: int

    def __post_init__(self):
        atoms = tuple(self.atoms)
        object.__setattr__(self, "atoms", atoms)
        if not atoms:
            raise ConstellationError("constellation has no atoms")
        for a in atoms:
            if not 0 <= a.time_center < self.n:
                raise ConstellationError(
                    f"atom time_center {a.time_center} outside grid [0, {self.n})"
                )

    @classmethod
    def from_centers(
        cls,
        centers: Sequence[tuple[float, float]],
        n: int,
        width: float = 4.0,
        amplitude: complex = 1.0,
    ) -> "Constellation":
        return cls(
            tuple(AtomSpec(x, w, amplitude, width) for x, w in centers), n
        )

    @property
    def centers(self) -> list[tuple[float, float]]:
        return [(a.time_center, a.freq_center) for a in self.atoms]


# The four-atom rhombus: pi(20,.25), pi(40,.15), pi(40,.35), pi(60,.25).
FOUR_ATOM_CENTERS = ((20.0, 0.25), (40.0, 0.15), (40.0, 0.35), (60.0, 0.25))


def four_atoms(n: int = 128, width: float = 4.0) -> Constellation:
    return Constellation.from_centers(FOUR_ATOM_CENTERS, n, width)


def gaussian(n: int, spec: AtomSpec) -> Signal:
    """Sample ``amplitude * exp(2 pi i j w) * exp(-pi ((j - x) / width)**2)``.

    The returned signal carries ``meta["edge_tail"]``, the larger of the two
    envelope values at the grid ends, and ``meta["tail_warning"]`` when it
    exceeds 1e-12.
    """
    if n < 2 or n % 2:
        raise InvalidParameterError(f"N must be even and >= 2, got {n}")
    j = np.arange(n, dtype=float)
    envelope = np.exp(-np.pi * ((j - spec.time_center) / spec.width) ** 2)
    samples = complex(spec.amplitude) * np.exp(2j * np.pi * j * spec.freq_center) * envelope
    tail = float(max(envelope[0], envelope[-1]))
    return Signal(
        samples,
        label=f"gaussian({spec.time_center:g},{spec.freq_center:g})",
        meta={"edge_tail": tail, "tail_warning": tail > EDGE_TAIL_LIMIT},
    )


def translate(f: Signal, x: int) -> Signal:
    """Zero-extended shift: ``out[j] = f[j - x]``."""
    if int(x) != x:
        raise InvalidParameterError("translation must be an integer number of samples")
    x = int(x)
    n = f.n
    if abs(x) >= n:
        raise ShiftOutOfRangeError(f"|shift| = {abs(x)} must be < N = {n}")
    out = np.zeros(n, dtype=np.complex128)
    if x >= 0:
        out[x:] = f.samples[: n - x]
    else:
        out[: n + x] = f.samples[-x:]
    return f.with_samples(out)


def modulate(f: Signal, omega: float) -> Signal:
    if not math.isfinite(omega):
        raise InvalidParameterError("modulation frequency must be finite")
    j = np.arange(f.n)
    return f.with_samples(np.exp(2j * np.pi * j * omega) * f.samples)


def tf_shift(f: Signal, x: int, omega: float) -> Signal:
    """Time-frequency shift: translate by ``x`` first, then modulate by ``omega``."""
    return modulate(translate(f, x), omega)


def synthesize(constellation: Constellation) -> Signal:
    parts = [gaussian(constellation.n, a) for a in constellation.atoms]
    samples = np.sum([p.samples for p in parts], axis=0)
    tail = max(p.meta["edge_tail"] for p in parts)
    return Signal(
        samples,
        label=f"{len(parts)}-atom constellation",
        meta={"edge_tail": tail, "tail_warning": tail > EDGE_TAIL_LIMIT},
    )


def rotate_constellation(c: Constellation, angle: float) -> Constellation:
    """Rotate atom centres about their centroid.

    The rotation acts in normalised coordinates ``(x / N, 2 w)`` where both
    axes span [0, 1). Widths are left untouched.
    """
    if not math.isfinite(angle):
        raise InvalidParameterError("rotation angle must be finite")
    pts = np.array([(a.time_center / c.n, 2.0 * a.freq_center) for a in c.atoms])
    centroid = pts.mean(axis=0)
    cos, sin = math.cos(angle), math.sin(angle)
    rot = np.array([[cos, -sin], [sin, cos]])
    moved = (pts - centroid) @ rot.T + centroid

    atoms = []
    for a, (u, v) in zip(c.atoms, moved):
        x, w = float(u * c.n), float(v / 2.0)
        if not (0 <= w < 0.5 and 0 <= x < c.n):
            raise ConstellationOutOfBandError(
                f"rotation by {angle:g} rad moves atom {a.time_center:g},"
                f"{a.freq_center:g} to ({x:.4g}, {w:.4g}), outside the grid"
            )
        atoms.append(replace(a, time_center=x, freq_center=w))
    return Constellation(tuple(atoms), c.n)


def analytic_projection(f: Signal) -> Signal:
    """Remove negative-frequency content.

    DFT bins ``N/2+1 .. N-1`` are zeroed and bins 0 and ``N/2`` are halved,
    so a real input maps to half its analytic associate.
    """
    n = f.n
    spec = np.fft.fft(f.samples)
    spec[n // 2 + 1 :] = 0
    spec[0] *= 0.5
    spec[n // 2] *= 0.5
    return f.with_samples(np.fft.ifft(spec))


def load_wav(path, start: int = 0, length: int | None = None) -> Signal:
    """Read a 16-bit PCM WAV file as a mono signal scaled to [-1, 1).

    Stereo frames are averaged. ``start`` and ``length`` select a window in
    frames; without ``length`` the rest of the file is used, dropping one
    trailing frame if needed to keep the length even.
    """
    path = Path(path)
    try:
        with wave.open(str(path), "rb") as w:
            channels = w.getnchannels()
            width = w.getsampwidth()
            rate = w.getframerate()
            total = w.getnframes()
            if width != 2:
                raise WavFormatError(
                    f"{path}: unsupported sample width {8 * width} bits "
                    "(fmt chunk at byte offset 12); only 16-bit PCM is read"
                )
            if channels not in (1, 2):
                raise WavFormatError(f"{path}: unsupported channel count {channels}")
            if start < 0 or start >= total:
                raise WavFormatError(
                    f"{path}: window start {start} outside [0, {total}) frames"
                )
            if length is None:
                length = total - start
                length -= length % 2
            if length < 2 or start + length > total:
                raise WavFormatError(
                    f"{path}: window [{start}, {start + length}) exceeds {total} frames"
                )
            w.setpos(start)
            raw = w.readframes(length)
    except wave.Error as exc:
        raise WavFormatError(f"{path}: {exc}") from exc
    except EOFError as exc:
        raise WavFormatError(f"{path}: truncated RIFF header") from exc

    data = np.frombuffer(raw, dtype="<i2").astype(float)
    if data.size != length * channels:
        raise WavFormatError(
            f"{path}: data chunk truncated at frame {start + data.size // channels}"
        )
    frames = data.reshape(length, channels).mean(axis=1) / 32768.0
    return Signal(frames, sample_period=1.0 / rate, label=path.name)


def write_wav(path, signal: Signal | npt.ArrayLike, rate: int = 8000) -> None:
    """Write the real part of a signal as 16-bit mono PCM."""
    x = signal.samples.real if isinstance(signal, Signal) else np.real(signal)
    q = np.clip(np.round(np.asarray(x) * 32768.0), -32768, 32767).astype("<i2")
    with wave.open(str(path), "wb") as w:
        w.setnchannels(1)
        w.setsampwidth(2)
        w.setframerate(int(rate))
        w.writeframes(q.tobytes())


def signal_to_csv(f: Signal) -> str:
    lines = ["index,re,im"]
    for j, z in enumerate(f.samples):
        lines.append(f"{j},{z.real:.16e},{z.imag:.16e}")
    return "\n".join(lines) + "\n"
