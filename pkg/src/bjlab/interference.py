"""Auto-terms, cross-terms and their damping across Born-Jordan orders.

Spots are measured at the scale of a Gaussian atom's Wigner footprint. For
an atom of width ``w`` (envelope ``exp(-pi (t / w)**2)``) the squared
footprint has standard deviations ``w / (2 sqrt(pi))`` samples in time and
``1 / (2 sqrt(pi) w)`` cycles/sample in frequency; regions, smoothing and
spot clustering are all expressed in these units.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import ndimage

from bjlab.cohen import bjd
from bjlab.errors import InvalidParameterError, PreconditionError
from bjlab.signals import AtomSpec, Constellation, Signal, gaussian
from bjlab.transforms import MOYAL_KAPPA, TFDistribution, moyal_product, wigner

REGION_STDS = 3.0
ORTHOGONAL_LIMIT = 1e-12
# Local maxima below this fraction of the peak are ignored when clustering.
SPOT_FLOOR = 1e-6


def footprint_std(width: float) -> tuple[float, float]:
    """(time, frequency) standard deviations of ``|W|**2`` for a width-``width`` atom."""
    return width / (2 * math.sqrt(math.pi)), 1.0 / (2 * math.sqrt(math.pi) * width)


@dataclass(frozen=True)
class RegionSpec:
    center: tuple[float, float]
    half_widths: tuple[float, float]

    def __post_init__(self):
        if min(self.half_widths) <= 0:
            raise InvalidParameterError(f"half widths must be positive: {self.half_widths}")

    @classmethod
    def around(cls, center: tuple[float, float], width: float) -> "RegionSpec":
        st, sw = footprint_std(width)
        return cls(tuple(center), (REGION_STDS * st, REGION_STDS * sw))

    def overlaps(self, other: "RegionSpec") -> bool:
        return all(
            abs(a - b) < ha + hb
            for a, b, ha, hb in zip(self.center, other.center, self.half_widths, other.half_widths)
        )

    def mask(self, n: int) -> np.ndarray:
        t = np.arange(n)
        w = np.arange(n) / (2 * n)
        in_t = np.abs(t - self.center[0]) <= self.half_widths[0]
        in_w = np.abs(w - self.center[1]) <= self.half_widths[1]
        return np.outer(in_t, in_w)


def region_energy(d: TFDistribution, r: RegionSpec) -> float:
    """Sum of ``|D|**2 * cell_area`` over the cells inside ``r`` (clipped to the grid)."""
    mask = r.mask(d.n)
    if not mask.any():
        raise InvalidParameterError(f"region {r} does not intersect the grid")
    return float(np.sum(np.abs(d.values[mask]) ** 2) * d.cell_area)


def local_energy_map(d: TFDistribution, width: float) -> np.ndarray:
    """``sqrt`` of ``|D|**2`` smoothed by the squared footprint of a width-``width`` atom.

    The smoothing averages out the oscillation inside cross-terms so each
    spot shows as a single bump. Frequency wraps around; time does not.
    """
    st, sw = footprint_std(width)
    sigma = (st / math.sqrt(2), sw * 2 * d.n / math.sqrt(2))
    smooth = ndimage.gaussian_filter(np.abs(d.values) ** 2, sigma=sigma, mode=("constant", "wrap"))
    return np.sqrt(np.maximum(smooth, 0.0))


def find_spots(d: TFDistribution, width: float = 4.0) -> list[dict]:
    """Clusters of local maxima of the local energy map, strongest first.

    Maxima closer than one footprint standard deviation in both axes are
    merged (single linkage). Each spot reports its peak cell and its value
    relative to the global peak.
    """
    n = d.n
    amp = local_energy_map(d, width)
    top = float(amp.max())
    if top == 0.0:
        return []
    peaks = ndimage.maximum_filter(amp, size=3, mode=("nearest", "wrap"))
    cells = np.argwhere((amp == peaks) & (amp > SPOT_FLOOR * top))
    st, sw = footprint_std(width)
    radius_k = sw * 2 * n

    parent = list(range(len(cells)))

    def root(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in itertools.combinations(range(len(cells)), 2):
        dt = abs(cells[i, 0] - cells[j, 0])
        dk = abs(cells[i, 1] - cells[j, 1])
        if dt <= st and min(dk, n - dk) <= radius_k:
            parent[root(i)] = root(j)

    best: dict[int, tuple[int, int]] = {}
    for i, (t, k) in enumerate(cells):
        r = root(i)
        if r not in best or amp[t, k] > amp[best[r]]:
            best[r] = (int(t), int(k))
    spots = [
        {"time": t, "freq": k / (2 * n), "level": float(amp[t, k] / top)}
        for t, k in best.values()
    ]
    return sorted(spots, key=lambda s: (-s["level"], s["time"], s["freq"]))


def ghost_count(d: TFDistribution, threshold_fraction: float, width: float = 4.0) -> int:
    """Number of spots whose local energy exceeds ``threshold_fraction`` of the peak.

    Counts every spot, auto-terms included. Monotone non-increasing in the
    threshold since the clustering does not depend on it.
    """
    if not 0 < threshold_fraction < 1:
        raise InvalidParameterError("threshold_fraction must lie in (0, 1)")
    return sum(s["level"] > threshold_fraction for s in find_spots(d, width))


def _classify(a: AtomSpec, b: AtomSpec, tol: float = 1e-9) -> str:
    if abs(a.time_center - b.time_center) <= tol:
        return "on_axis_time"
    if abs(a.freq_center - b.freq_center) <= tol:
        return "on_axis_freq"
    return "diagonal"


@dataclass
class DampingReport:
    orders: list[int]
    pairs: list[dict]
    auto_terms: list[dict]
    ghost_counts: dict[int, int]
    midpoint_clusters: list[tuple[float, float]]
    overlaps: list[str]
    settings: dict = field(default_factory=dict)

    def pair(self, i: int, j: int) -> dict:
        for p in self.pairs:
            if p["pair"] == [i, j]:
                return p
        raise KeyError((i, j))

    def to_dict(self) -> dict:
        return {
            "orders": self.orders,
            "pairs": self.pairs,
            "auto_terms": self.auto_terms,
            "ghost_counts": {str(k): v for k, v in self.ghost_counts.items()},
            "midpoint_clusters": [list(m) for m in self.midpoint_clusters],
            "overlap_flags": self.overlaps,
            "settings": self.settings,
        }


def cross_term_report(
    f: Signal,
    c: Constellation,
    orders,
    threshold_fraction: float = 0.1,
    distributions: dict[int, TFDistribution] | None = None,
) -> DampingReport:
    """Score auto-term and pairwise cross-term regions on ``bjd(f, n)`` for each order.

    Cross-term regions sit at the midpoint of each atom pair. Order 0 is
    always evaluated so that ratios to the Wigner distribution are defined.
    Precomputed distributions keyed by order may be passed in.
    """
    orders = sorted({int(n) for n in orders})
    if not orders:
        raise InvalidParameterError("orders must be non-empty")
    if f.n != c.n:
        raise InvalidParameterError("signal and constellation lengths differ")
    width = max(a.width for a in c.atoms)
    dists = dict(distributions or {})
    for n in sorted(set(orders) | {0}):
        if n not in dists:
            dists[n] = bjd(f, n).distribution

    auto_regions = [RegionSpec.around((a.time_center, a.freq_center), a.width) for a in c.atoms]
    auto_terms = []
    for i, r in enumerate(auto_regions):
        auto_terms.append({
            "atom": i,
            "center": list(r.center),
            "energies": {str(n): region_energy(dists[n], r) for n in orders},
        })

    pairs, cross_regions = [], []
    for i, j in itertools.combinations(range(len(c.atoms)), 2):
        a, b = c.atoms[i], c.atoms[j]
        mid = ((a.time_center + b.time_center) / 2, (a.freq_center + b.freq_center) / 2)
        region = RegionSpec.around(mid, max(a.width, b.width))
        cross_regions.append(region)
        e0 = region_energy(dists[0], region)
        energies = {n: region_energy(dists[n], region) for n in orders}
        pairs.append({
            "pair": [i, j],
            "midpoint": list(mid),
            "classification": _classify(a, b),
            "energies": {str(n): e for n, e in energies.items()},
            "ratios": {str(n): (1.0 if n == 0 else (e / e0 if e0 > 0 else 0.0))
                       for n, e in energies.items()},
        })

    clusters: list[tuple[float, float]] = []
    for p in pairs:
        m = tuple(p["midpoint"])
        if not any(abs(m[0] - q[0]) < 1e-9 and abs(m[1] - q[1]) < 1e-9 for q in clusters):
            clusters.append(m)

    overlaps = []
    for (i, ra), (j, rc) in itertools.product(enumerate(auto_regions), enumerate(cross_regions)):
        if ra.overlaps(rc):
            overlaps.append(f"auto {i} overlaps cross {pairs[j]['pair']}")

    st, sw = footprint_std(width)
    return DampingReport(
        orders=orders,
        pairs=pairs,
        auto_terms=auto_terms,
        ghost_counts={n: ghost_count(dists[n], threshold_fraction, width) for n in orders},
        midpoint_clusters=clusters,
        overlaps=overlaps,
        settings={
            "N": f.n,
            "atom_width": width,
            "threshold_fraction": threshold_fraction,
            "region_half_widths": [REGION_STDS * st, REGION_STDS * sw],
            "spot_cluster_radius": [st, sw],
            "energy": "sum |Q|^2 * cell_area over region cells",
            "cell_area": dists[0].cell_area,
        },
    )


def moyal_check(f: Signal, g: Signal, kappa: float = MOYAL_KAPPA) -> float:
    """Relative defect of the discrete Moyal identity ``<Wf, Wg> = |<f, g>|**2``.

    Falls back to the absolute defect when the pair is nearly orthogonal.
    """
    if f.n != g.n:
        raise InvalidParameterError("signals must have equal length")
    target = abs(np.vdot(g.samples, f.samples)) ** 2
    value = kappa * moyal_product(wigner(f), wigner(g)).real
    if target < ORTHOGONAL_LIMIT * f.energy() * g.energy():
        return abs(value - target)
    return abs(value - target) / target


def dilation_norms(lambdas, n: int = 512, base_width: float = 16.0) -> np.ndarray:
    """``||W(phi(lambda .))||_2`` in units where the base Gaussian is ``phi``.

    The signal for each ``lambda`` is a centred Gaussian of width
    ``base_width / lambda`` samples; time is measured in units of
    ``base_width`` samples, which rescales the discrete Wigner by
    ``1 / base_width`` and leaves the cell area unchanged.
    """
    norms = []
    for lam in lambdas:
        w = base_width / lam
        if w < 4 or base_width * lam > n / 8:
            raise PreconditionError(
                f"lambda={lam:g} violates resolution limits: width {w:g} < 4 samples "
                f"or base_width*lambda {base_width * lam:g} > N/8 = {n / 8:g}"
            )
        d = wigner(gaussian(n, AtomSpec(n / 2, 0.0, 1.0, w)))
        norms.append(math.sqrt(np.sum(d.values ** 2) * d.cell_area) / base_width)
    return np.array(norms)


def dilation_scaling(lambdas, n: int = 512, base_width: float = 16.0) -> float:
    """Least-squares slope of ``log ||W(phi(lambda .))||_2`` against ``log lambda``."""
    lambdas = np.asarray(list(lambdas), dtype=float)
    if lambdas.size < 3:
        raise PreconditionError("need at least three dilation factors")
    norms = dilation_norms(lambdas, n, base_width)
    slope, _ = np.polyfit(np.log(lambdas), np.log(norms), 1)
    return float(slope)
