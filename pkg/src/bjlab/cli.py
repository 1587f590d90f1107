"""``bjlab run|render|selfcheck``.

``run`` accepts a plain-text config file of ``key = value`` lines; any flag
given on the command line overrides the file.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from bjlab import io
from bjlab.errors import BJLabError
from bjlab.experiments import PRESETS, ExperimentConfig, run
from bjlab.selfcheck import run_selfcheck
from bjlab.transforms import MOYAL_KAPPA


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in str(text).split(",") if t.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _float_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(t) for t in str(text).split(",") if t.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc


def _bool(text: str) -> bool:
    v = str(text).strip().lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected a boolean, got {text!r}")


# config key -> parser for values read from a config file
CONFIG_KEYS = {
    "preset": str,
    "n": int,
    "orders": _int_list,
    "width": float,
    "angle": float,
    "pair": str,
    "threshold": float,
    "out": str,
    "scale": str,
    "floor_db": float,
    "png": _bool,
    "wav": str,
    "start": int,
    "length": int,
    "lambdas": _float_list,
    "base_width": float,
    "keep_ambiguity": _bool,
}


def read_config(path) -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment. Keys may use dashes."""
    values = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise BJLabError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in CONFIG_KEYS:
            raise BJLabError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            values[key] = CONFIG_KEYS[key](value)
        except (ValueError, argparse.ArgumentTypeError) as exc:
            raise BJLabError(f"{path}:{lineno}: bad value for {key}: {exc}") from exc
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bjlab", description="Born-Jordan time-frequency experiments")
    sub = parser.add_subparsers(dest="command", required=True)

    # defaults are None so that only explicit flags override the config file
    r = sub.add_parser("run", help="run an experiment preset and write its artifacts")
    r.add_argument("--config", help="key = value config file")
    r.add_argument("--preset", choices=PRESETS)
    r.add_argument("--n", type=int, help="signal length (even)")
    r.add_argument("--orders", type=_int_list, help="comma-separated orders, default 0,1,3,5")
    r.add_argument("--width", type=float, help="atom width in samples")
    r.add_argument("--angle", type=float, help="rotation angle in radians (rotated preset)")
    r.add_argument("--pair", choices=("axis", "diagonal"), help="two-atoms preset geometry")
    r.add_argument("--threshold", type=float, help="ghost-count threshold fraction")
    r.add_argument("--out", help="output directory")
    r.add_argument("--scale", choices=("linear", "db"))
    r.add_argument("--floor-db", dest="floor_db", type=float)
    r.add_argument("--png", action="store_const", const=True, help="also write PNG images")
    r.add_argument("--wav", help="16-bit PCM WAV file (music preset)")
    r.add_argument("--start", type=int, help="first WAV frame")
    r.add_argument("--length", type=int, help="WAV frames to read")
    r.add_argument("--lambdas", type=_float_list, help="dilation factors")
    r.add_argument("--base-width", dest="base_width", type=float)
    r.add_argument("--keep-ambiguity", dest="keep_ambiguity", action="store_const", const=True)

    d = sub.add_parser("render", help="render a distribution CSV as a grayscale image")
    d.add_argument("csv", help="distribution CSV (n,k,re,im)")
    d.add_argument("--out", help="output path without extension (default: next to the CSV)")
    d.add_argument("--scale", choices=("linear", "db"), default="linear")
    d.add_argument("--floor-db", dest="floor_db", type=float, default=-60.0)
    d.add_argument("--png", action="store_true")

    s = sub.add_parser("selfcheck", help="run the invariant suite on small grids")
    s.add_argument("--kappa-scale", type=float, default=1.0,
                   help="multiply the Moyal constant (fault injection)")
    return parser


def _cmd_run(args) -> int:
    settings = read_config(args.config) if args.config else {}
    for key in CONFIG_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            settings[key] = value
    cfg = ExperimentConfig(**settings)
    for path in run(cfg):
        print(path)
    return 0


def _cmd_render(args) -> int:
    d = io.load_distribution(args.csv)
    target = Path(args.out) if args.out else Path(args.csv).with_suffix("")
    for path in io.render(d, target, args.scale, args.floor_db, args.png):
        print(path)
    return 0


def _cmd_selfcheck(args) -> int:
    lines, ok = run_selfcheck(MOYAL_KAPPA * args.kappa_scale)
    print("\n".join(lines))
    return 0 if ok else 1


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"run": _cmd_run, "render": _cmd_render, "selfcheck": _cmd_selfcheck}[args.command]
    try:
        return handler(args)
    except (BJLabError, OSError) as exc:
        print(f"bjlab: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
