"""Experiment presets and the file-producing runner behind ``bjlab run``.

Each preset builds a signal, computes the Born-Jordan distributions for the
requested orders and writes, per order, a CSV + JSON pair and a grayscale
image, followed by a single ``report.json``. Everything is validated before
the first file is written so a rejected configuration leaves no debris.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from bjlab import io
from bjlab.cohen import bjd
from bjlab.errors import BJLabError, InvalidParameterError, PreconditionError
from bjlab.interference import cross_term_report, dilation_norms, dilation_scaling, ghost_count
from bjlab.signals import (
    Constellation,
    Signal,
    analytic_projection,
    four_atoms,
    load_wav,
    rotate_constellation,
    synthesize,
)
from bjlab.splines import MAX_ORDER
from bjlab.transforms import spectrogram

PRESETS = ("four-atoms", "rotated", "two-atoms", "dilation", "music")

# Four-atom width that resolves all nine spots on the default 128 grid.
FOUR_ATOM_WIDTH = 13.0
ROTATION_ANGLE = math.pi / 6
TWO_ATOM_WIDTH = 6.0
TWO_ATOM_AXIS = ((64.0, 0.125), (64.0, 0.375))
MUSIC_WIDTH = 8.0
MIN_N = 8
DEFAULT_N = {"dilation": 512, "music": 256}


@dataclass
class ExperimentConfig:
    """Everything ``run`` needs. ``n=None`` and ``width=None`` pick preset defaults."""

    preset: str = "four-atoms"
    n: int | None = None
    orders: tuple[int, ...] = (0, 1, 3, 5)
    width: float | None = None
    angle: float = ROTATION_ANGLE
    pair: str = "axis"
    threshold: float = 0.1
    out: str = "bjlab-out"
    scale: str = "linear"
    floor_db: float = -60.0
    png: bool = False
    wav: str | None = None
    start: int = 0
    length: int | None = None
    lambdas: tuple[float, ...] = (0.5, 1.0, 2.0)
    base_width: float = 16.0
    keep_ambiguity: bool = False

    def __post_init__(self):
        if self.n is None:
            self.n = DEFAULT_N.get(self.preset, 128)

    def validate(self) -> None:
        if self.preset not in PRESETS:
            raise InvalidParameterError(f"unknown preset {self.preset!r}; choose from {', '.join(PRESETS)}")
        if self.n % 2 or self.n < MIN_N:
            raise PreconditionError(f"N must be even and >= {MIN_N}, got {self.n}")
        if not self.orders:
            raise InvalidParameterError("orders must be non-empty")
        for k in self.orders:
            if not 0 <= k <= MAX_ORDER:
                raise InvalidParameterError(f"order {k} outside 0..{MAX_ORDER}")
        if self.width is not None and not self.width > 0:
            raise InvalidParameterError(f"width must be positive, got {self.width}")
        if not 0 < self.threshold < 1:
            raise InvalidParameterError(f"threshold must lie in (0, 1), got {self.threshold}")
        if self.scale not in ("linear", "db"):
            raise InvalidParameterError(f"scale must be linear or db, got {self.scale!r}")
        if not self.floor_db < 0:
            raise InvalidParameterError(f"floor_db must be negative, got {self.floor_db}")
        if self.pair not in ("axis", "diagonal"):
            raise InvalidParameterError(f"pair must be axis or diagonal, got {self.pair!r}")

    def to_dict(self) -> dict:
        """Settings that shape the results; the output location is left out."""
        d = asdict(self)
        del d["out"]
        d["orders"] = list(self.orders)
        d["lambdas"] = list(self.lambdas)
        return d


def four_atom_constellation(n: int = 128, width: float = FOUR_ATOM_WIDTH) -> Constellation:
    return four_atoms(n, width)


def two_atom_constellation(pair: str = "axis", n: int = 128, width: float = TWO_ATOM_WIDTH) -> Constellation:
    """Two atoms sharing a time centre, or the same pair turned by 45 degrees.

    The diagonal pair keeps the separation of the axis pair, so their
    damping ratios can be compared directly.
    """
    axis = Constellation.from_centers(TWO_ATOM_AXIS, n, width)
    if pair == "axis":
        return axis
    if pair == "diagonal":
        return rotate_constellation(axis, math.pi / 4)
    raise InvalidParameterError(f"pair must be axis or diagonal, got {pair!r}")


def stand_in_music(n: int = 512, rate: int = 8000) -> Signal:
    """A short synthetic polyphonic extract: three overlapping harmonic notes.

    Each note has a fundamental and two weaker overtones under a Hann
    envelope; onsets are staggered so the chord builds up over time.
    """
    j = np.arange(n)
    notes = [(0.045, 0.0, 0.7), (0.06, 0.25, 1.0), (0.075, 0.45, 1.0)]
    x = np.zeros(n)
    for f0, on, off in notes:
        a, b = int(on * n), int(off * n)
        env = np.zeros(n)
        env[a:b] = np.hanning(b - a)
        for h, amp in ((1, 1.0), (2, 0.5), (3, 0.25)):
            x += amp * env * np.cos(2 * np.pi * h * f0 * j)
    x *= 0.25
    return Signal(x, sample_period=1.0 / rate, label="stand-in polyphonic extract")


def _constellation_for(cfg: ExperimentConfig) -> Constellation:
    if cfg.preset == "four-atoms":
        return four_atom_constellation(cfg.n, cfg.width or FOUR_ATOM_WIDTH)
    if cfg.preset == "rotated":
        return rotate_constellation(four_atom_constellation(cfg.n, cfg.width or FOUR_ATOM_WIDTH), cfg.angle)
    return two_atom_constellation(cfg.pair, cfg.n, cfg.width or TWO_ATOM_WIDTH)


def _music_signal(cfg: ExperimentConfig) -> Signal:
    if cfg.wav:
        raw = load_wav(cfg.wav, cfg.start, cfg.length if cfg.length is not None else cfg.n)
        if raw.n != cfg.n:
            raise PreconditionError(f"WAV window has {raw.n} samples but N = {cfg.n}")
    else:
        raw = stand_in_music(cfg.n)
    return analytic_projection(raw)


def _stem(cfg: ExperimentConfig) -> str:
    if cfg.preset == "two-atoms":
        return f"two-atoms-{cfg.pair}"
    return cfg.preset


def plan(cfg: ExperimentConfig) -> dict:
    """Validate ``cfg`` and build the signal without touching the filesystem."""
    cfg.validate()
    if cfg.preset == "dilation":
        # evaluating the norms checks the resolution preconditions
        dilation_norms(cfg.lambdas, cfg.n, cfg.base_width)
        return {"signal": None, "constellation": None}
    if cfg.preset == "music":
        return {"signal": _music_signal(cfg), "constellation": None}
    c = _constellation_for(cfg)
    return {"signal": synthesize(c), "constellation": c}


def run(cfg: ExperimentConfig) -> list[Path]:
    """Execute an experiment and return the written paths in creation order."""
    prepared = plan(cfg)
    out = Path(cfg.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise BJLabError(f"cannot create output directory {out}: {exc}") from exc
    if cfg.preset == "dilation":
        return _run_dilation(cfg, out)

    f, c = prepared["signal"], prepared["constellation"]
    orders = sorted(set(cfg.orders))
    dists = {}
    written: list[Path] = []
    for k in orders:
        res = bjd(f, k, keep_ambiguity=cfg.keep_ambiguity)
        dists[k] = res.distribution
        stem = out / f"{_stem(cfg)}_n{k}"
        written += io.write_matrix(stem, res.distribution, {"preset": _stem(cfg)})
        written += io.render(res.distribution, stem, cfg.scale, cfg.floor_db, cfg.png)
        if res.ambiguity_snapshot is not None:
            written += io.write_matrix(out / f"{_stem(cfg)}_n{k}_ambiguity", res.ambiguity_snapshot)

    signal_info = {
        "N": f.n,
        "label": f.label,
        "edge_tail": f.meta.get("edge_tail"),
        "tail_warning": f.meta.get("tail_warning"),
    }
    if c is not None:
        report = cross_term_report(f, c, orders, cfg.threshold, distributions=dists).to_dict()
        signal_info["atoms"] = [
            {"time_center": a.time_center, "freq_center": a.freq_center, "width": a.width}
            for a in c.atoms
        ]
    else:
        spec = spectrogram(f)
        stem = out / f"{_stem(cfg)}_spectrogram"
        written += io.write_matrix(stem, spec, {"preset": _stem(cfg)})
        written += io.render(spec, stem, cfg.scale, cfg.floor_db, cfg.png)
        width = cfg.width or MUSIC_WIDTH
        report = {
            "orders": orders,
            "ghost_counts": {str(k): ghost_count(dists[k], cfg.threshold, width) for k in orders},
            "total_energy": {str(k): float(np.sum(dists[k].values) * dists[k].cell_area) for k in orders},
            "settings": {"N": f.n, "spot_width": width, "threshold_fraction": cfg.threshold,
                         "cell_area": dists[orders[0]].cell_area},
        }
    report["signal"] = signal_info
    report["config"] = cfg.to_dict()
    written.append(io.write_json(out / "report.json", report))
    return written


def _run_dilation(cfg: ExperimentConfig, out: Path) -> list[Path]:
    norms = dilation_norms(cfg.lambdas, cfg.n, cfg.base_width)
    slope = dilation_scaling(cfg.lambdas, cfg.n, cfg.base_width)
    record = {
        "slope": slope,
        "expected": -1.0,
        "lambdas": list(cfg.lambdas),
        "norms": [float(v) for v in norms],
        "N": cfg.n,
        "base_width": cfg.base_width,
        "norm": "sqrt(sum W**2 * cell_area) in units of base_width samples",
        "config": cfg.to_dict(),
    }
    return [io.write_json(out / "slope.json", record)]
