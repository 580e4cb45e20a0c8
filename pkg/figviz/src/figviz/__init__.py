"""Figure rendering for permwalk walk/marked CSV files.

Consumes only the documented CSV format (header ``t,<labels...>``, rows of
12-significant-digit floats, optional ``#`` footer comments) and renders two
styles: position-time heatmaps with a red-to-green probability colormap, and
probability-versus-time curve overlays.  Rendering never mutates its inputs;
colormap endpoints are pinned to the probability range [0, 1] so images are
comparable across system sizes.
"""

from .io import FigvizError, WalkTable, read_walk_csv
from .render import (CurvesRender, FigureSpec, HeatmapRender, render_curves,
                     render_heatmap)

__version__ = "0.1.0"

__all__ = [
    "CurvesRender",
    "FigureSpec",
    "FigvizError",
    "HeatmapRender",
    "WalkTable",
    "read_walk_csv",
    "render_curves",
    "render_heatmap",
]
