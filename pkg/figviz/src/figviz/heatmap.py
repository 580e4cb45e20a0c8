"""figviz-heatmap: walk CSV -> position-time probability heatmap."""

import argparse
import sys

from .io import FigvizError
from .render import FigureSpec, render_heatmap


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="figviz-heatmap",
        description="Render a permwalk walk CSV as a probability heatmap "
                    "(red near 0, green near 1, colormap pinned to [0, 1]).")
    parser.add_argument("--input", required=True, help="walk CSV path")
    parser.add_argument("--output", required=True, help="image path (png, pdf, ...)")
    parser.add_argument("--power", type=float, default=1.0,
                        help="exponent applied to probabilities (default 1)")
    parser.add_argument("--title")
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        spec = FigureSpec(inputs=[args.input], style="heatmap",
                          output=args.output, power=args.power, title=args.title)
        render_heatmap(spec)
    except FigvizError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
