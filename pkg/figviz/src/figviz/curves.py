"""figviz-curves: walk/marked CSV columns -> probability-vs-time overlays."""

import argparse
import sys

from .io import FigvizError
from .render import FigureSpec, render_curves


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="figviz-curves",
        description="Overlay probability-versus-time curves from one or more "
                    "permwalk CSV files.")
    parser.add_argument("--input", action="append", required=True,
                        help="CSV path; repeat for overlays across files")
    parser.add_argument("--output", required=True, help="image path")
    parser.add_argument("--targets",
                        help="comma-separated column labels (default: all)")
    parser.add_argument("--power", type=float, default=1.0)
    parser.add_argument("--title")
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    targets = None
    if args.targets is not None:
        targets = [t for t in args.targets.split(",") if t]
    try:
        spec = FigureSpec(inputs=args.input, style="curves", output=args.output,
                          power=args.power, targets=targets, title=args.title)
        render_curves(spec)
    except FigvizError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
