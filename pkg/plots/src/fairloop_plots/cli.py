"""Command line entry point.

    plots <figure> --in <csv...> --out <file>
    plots <figure> --manifest <manifest.json> --out <file>

With ``--manifest``, the figure's input CSV is located among the
manifest's outputs (resolved relative to the manifest's directory).
Exit codes: 0 success, 2 bad invocation or schema mismatch, 3 empty
input data.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .figures import MANIFEST_SOURCES, FigureSpec, render
from .schemas import FIGURES, EmptyDataError, SchemaError


def locate_in_manifest(manifest_path: Path, figure: str) -> Path:
    with open(manifest_path) as fh:
        manifest = json.load(fh)
    wanted = MANIFEST_SOURCES[figure]
    for out in manifest.get("outputs", []):
        if out.get("path") == wanted:
            return manifest_path.parent / wanted
    raise SchemaError(f"{manifest_path}: no output named {wanted!r} "
                      f"(needed for figure {figure!r})")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plots", description="Render figures from fairloop CSV outputs.")
    parser.add_argument("figure", choices=list(FIGURES))
    parser.add_argument("--in", dest="inputs", nargs="+", default=None,
                        metavar="CSV", help="input CSV file(s)")
    parser.add_argument("--manifest", default=None,
                        help="run manifest to locate the input CSV")
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--band-sd", type=float, default=1.0,
                        help="shaded band half-width in standard deviations")
    parser.add_argument("--dpi", type=int, default=120)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.inputs:
            inputs = tuple(Path(p) for p in args.inputs)
        elif args.manifest:
            inputs = (locate_in_manifest(Path(args.manifest), args.figure),)
        else:
            print("error: config: provide --in or --manifest", file=sys.stderr)
            return 2
        spec = FigureSpec(figure=args.figure, inputs=inputs,
                          output=Path(args.out), band_sd=args.band_sd,
                          dpi=args.dpi)
        path = render(spec)
    except (SchemaError, FileNotFoundError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: schema: {exc}", file=sys.stderr)
        return 2
    except EmptyDataError as exc:
        print(f"error: empty-data: {exc}", file=sys.stderr)
        return 3
    print(f"wrote {path}")
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
