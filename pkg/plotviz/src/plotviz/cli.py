"""Plot command: render a sweep or frame-dump CSV to an image file."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .render import KINDS, PlotSpec, render
from .schema import EmptySelectionError, SchemaMismatchError


def _parse_range(text):
    lo, hi = (float(part) for part in text.split(","))
    return (lo, hi)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qread-plot",
        description="Render qread CSV output (sweeps or frame dumps) to figures",
    )
    parser.add_argument("--in", dest="input_csv", required=True, help="input CSV path")
    parser.add_argument("--kind", choices=KINDS, required=True)
    parser.add_argument(
        "--gain",
        choices=["opt", "phc"],
        default=None,
        help="benchmark column; curves default to both, heatmaps to phc",
    )
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument(
        "--raster",
        action="store_true",
        help="write a PNG when --out has no extension (default is SVG)",
    )
    parser.add_argument("--xlim", type=_parse_range, default=None, metavar="LO,HI")
    parser.add_argument("--ylim", type=_parse_range, default=None, metavar="LO,HI")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out = Path(args.out)
    if not out.suffix:
        out = out.with_suffix(".png" if args.raster else ".svg")
    spec = PlotSpec(
        input_csv=args.input_csv,
        kind=args.kind,
        out_path=out,
        gain=args.gain,
        xlim=args.xlim,
        ylim=args.ylim,
    )
    try:
        written = render(spec)
    except (SchemaMismatchError, EmptySelectionError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {written}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
