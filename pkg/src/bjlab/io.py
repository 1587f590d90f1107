"""Plain-text and raster export of distributions and reports.

CSV files hold one matrix entry per row (``n,k,re,im``) in ``.16e`` format,
which round-trips IEEE doubles exactly, so reading a CSV back and writing it
again reproduces the file byte for byte. JSON is written with sorted keys.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from bjlab.errors import GridError, InvalidParameterError
from bjlab.transforms import AmbiguityMatrix, TFDistribution

CSV_HEADER = "n,k,re,im"


def matrix_to_csv(values) -> str:
    v = np.asarray(values)
    if v.ndim != 2:
        raise GridError(f"expected a matrix, got shape {v.shape}")
    re = np.real(v)
    im = np.imag(v) if np.iscomplexobj(v) else np.zeros(v.shape)
    lines = [CSV_HEADER]
    for a in range(v.shape[0]):
        for b in range(v.shape[1]):
            lines.append(f"{a},{b},{re[a, b]:.16e},{im[a, b]:.16e}")
    return "\n".join(lines) + "\n"


def parse_csv(text: str) -> np.ndarray:
    """Inverse of ``matrix_to_csv``; returns a complex matrix."""
    lines = text.splitlines()
    if not lines or lines[0].strip() != CSV_HEADER:
        raise InvalidParameterError(f"missing CSV header {CSV_HEADER!r}")
    rows = [ln.split(",") for ln in lines[1:] if ln.strip()]
    if not rows:
        raise InvalidParameterError("CSV has no data rows")
    idx = np.array([(int(r[0]), int(r[1])) for r in rows])
    vals = np.array([complex(float(r[2]), float(r[3])) for r in rows])
    shape = tuple(idx.max(axis=0) + 1)
    if shape[0] * shape[1] != len(rows):
        raise GridError(f"CSV rows do not fill a {shape[0]}x{shape[1]} grid")
    out = np.zeros(shape, dtype=complex)
    out[idx[:, 0], idx[:, 1]] = vals
    return out


def dumps_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_json(path, obj) -> Path:
    path = Path(path)
    path.write_text(dumps_json(obj), encoding="utf-8")
    return path


def write_matrix(stem, m: TFDistribution | AmbiguityMatrix, extra: dict | None = None) -> tuple[Path, Path]:
    """Write ``<stem>.csv`` and the sidecar ``<stem>.json``."""
    stem = Path(stem)
    csv_path = stem.with_suffix(".csv")
    csv_path.write_text(matrix_to_csv(m.values), encoding="utf-8")
    meta = m.metadata()
    meta["csv_columns"] = CSV_HEADER
    if extra:
        meta.update(extra)
    json_path = write_json(stem.with_suffix(".json"), meta)
    return csv_path, json_path


def load_distribution(path) -> TFDistribution:
    """Read a distribution CSV; the sidecar JSON, if present, restores kind and order."""
    path = Path(path)
    values = parse_csv(path.read_text(encoding="utf-8"))
    kind, order = "custom", None
    sidecar = path.with_suffix(".json")
    if sidecar.exists():
        meta = json.loads(sidecar.read_text(encoding="utf-8"))
        kind, order = meta.get("kind", kind), meta.get("order")
    if not np.any(values.imag):
        values = values.real
    return TFDistribution(values, kind=kind, order=order)


def to_gray(d: TFDistribution | np.ndarray, scale: str = "linear", floor_db: float = -60.0) -> np.ndarray:
    """8-bit image of ``|D|``: row 0 is the highest frequency, dark means large.

    ``linear`` maps ``[0, max|D|]`` to ``[255, 0]``. ``db`` maps
    ``[floor_db, 0]`` dB of ``|D| / max|D|`` to ``[255, 0]``, clipping below
    the floor.
    """
    v = np.abs(np.asarray(d.values if isinstance(d, TFDistribution) else d))
    if not np.all(np.isfinite(v)):
        raise InvalidParameterError("cannot render non-finite values")
    top = float(v.max())
    if top == 0.0:
        level = np.zeros_like(v)
    elif scale == "linear":
        level = v / top
    elif scale == "db":
        if not floor_db < 0:
            raise InvalidParameterError(f"floor_db must be negative, got {floor_db}")
        with np.errstate(divide="ignore"):
            db = 20 * np.log10(v / top)
        level = 1.0 - np.clip(db, floor_db, 0.0) / floor_db
    else:
        raise InvalidParameterError(f"unknown scale {scale!r}")
    pixels = np.round(255.0 * (1.0 - level)).astype(np.uint8)
    # time runs left to right, frequency bottom to top
    return np.ascontiguousarray(pixels.T[::-1])


def write_pgm(path, image: np.ndarray) -> Path:
    path = Path(path)
    rows, cols = image.shape
    with open(path, "wb") as fh:
        fh.write(f"P5 {cols} {rows} 255\n".encode("ascii"))
        fh.write(image.astype(np.uint8).tobytes())
    return path


def read_pgm(path) -> np.ndarray:
    data = Path(path).read_bytes()
    header, _, body = data.partition(b"\n")
    magic, cols, rows, depth = header.split()
    if magic != b"P5" or depth != b"255":
        raise InvalidParameterError(f"{path}: not an 8-bit P5 image")
    return np.frombuffer(body, dtype=np.uint8).reshape(int(rows), int(cols))


def write_png(path, image: np.ndarray) -> Path:
    """PNG output needs Pillow; PGM is always available."""
    try:
        from PIL import Image
    except ImportError as exc:
        raise InvalidParameterError("PNG output requires Pillow (pip install Pillow)") from exc
    path = Path(path)
    Image.fromarray(image.astype(np.uint8)).save(path)
    return path


def render(d: TFDistribution, path, scale: str = "linear", floor_db: float = -60.0, png: bool = False) -> list[Path]:
    """Write ``<path>.pgm`` (and ``.png`` on request)."""
    image = to_gray(d, scale, floor_db)
    base = Path(path)
    out = [write_pgm(base.with_suffix(".pgm"), image)]
    if png:
        out.append(write_png(base.with_suffix(".png"), image))
    return out
