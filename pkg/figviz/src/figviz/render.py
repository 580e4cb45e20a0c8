"""Heatmap and curve rendering on top of matplotlib's Agg backend."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .io import FigvizError, read_walk_csv  # noqa: E402

# red for probabilities near zero, green for probabilities near one
COLORMAP = "RdYlGn"
VMIN, VMAX = 0.0, 1.0
DPI = 100


@dataclass
class FigureSpec:
    """What to render: input CSVs, style, probability exponent, output path."""

    inputs: List[str]
    style: str  # "heatmap" | "curves"
    output: str
    power: float = 1.0
    targets: Optional[List[str]] = None
    title: Optional[str] = None

    def __post_init__(self):
        if self.style not in ("heatmap", "curves"):
            raise FigvizError(f"unknown style {self.style!r}")
        if not self.inputs:
            raise FigvizError("at least one input CSV is required")
        if not self.power > 0:
            raise FigvizError("power must be positive")
        if self.targets is not None and len(self.targets) == 0:
            raise FigvizError("target list must not be empty when given")


@dataclass
class HeatmapRender:
    """What was drawn: the post-exponent matrix and the exact RGBA image."""

    path: str
    labels: List[str]
    times: np.ndarray
    data: np.ndarray  # probabilities ** power, shape (n_times, n_labels)
    rgba: np.ndarray
    vmin: float = VMIN
    vmax: float = VMAX

    @property
    def image_size(self):
        import PIL.Image  # lazy; matplotlib ships pillow

        with PIL.Image.open(self.path) as img:
            return img.size


def render_heatmap(spec: FigureSpec) -> HeatmapRender:
    """Render one walk CSV as a basis-index versus time probability heatmap.

    Columns (basis states) run along x, time along y, colormap pinned to the
    absolute probability range [0, 1]; ``spec.power`` is applied to the
    probabilities first (an exponent < 1 makes faint spread visible).
    """
    if spec.style != "heatmap":
        raise FigvizError("spec style is not 'heatmap'")
    if len(spec.inputs) != 1:
        raise FigvizError("heatmap takes exactly one input CSV")
    table = read_walk_csv(spec.inputs[0])
    data = table.probs ** spec.power
    cmap = plt.get_cmap(COLORMAP)
    rgba = cmap(np.clip(data, VMIN, VMAX))

    fig, ax = plt.subplots(figsize=(6.4, 4.8), dpi=DPI)
    mesh = ax.imshow(
        data,
        aspect="auto",
        origin="lower",
        interpolation="nearest",
        cmap=COLORMAP,
        vmin=VMIN,
        vmax=VMAX,
        extent=(0.5, len(table.labels) + 0.5, table.times[0], table.times[-1]),
    )
    ax.set_xlabel("basis state index" if len(table.labels) > 12 else "position")
    ax.set_ylabel("time")
    if len(table.labels) <= 12:
        ax.set_xticks(range(1, len(table.labels) + 1))
        ax.set_xticklabels(table.labels)
    if spec.title:
        ax.set_title(spec.title)
    fig.colorbar(mesh, ax=ax, label="probability" if spec.power == 1.0
                 else f"probability^{spec.power:g}")
    fig.savefig(spec.output, dpi=DPI)
    plt.close(fig)
    return HeatmapRender(spec.output, table.labels, table.times, data, rgba)


@dataclass
class CurvesRender:
    """What was drawn: output path and one legend entry per plotted line."""

    path: str
    legend: List[str] = field(default_factory=list)

    @property
    def n_lines(self) -> int:
        return len(self.legend)

    @property
    def image_size(self):
        import PIL.Image

        with PIL.Image.open(self.path) as img:
            return img.size


def render_curves(spec: FigureSpec) -> CurvesRender:
    """Overlay probability-versus-time curves from one or more CSVs.

    With several inputs the legend entries carry the file stem; ``targets``
    restricts the columns (an explicitly empty list is an error).
    """
    if spec.style != "curves":
        raise FigvizError("spec style is not 'curves'")
    tables = [(Path(p).stem, read_walk_csv(p)) for p in spec.inputs]
    fig, ax = plt.subplots(figsize=(6.4, 4.8), dpi=DPI)
    legend = []
    for stem, table in tables:
        labels = spec.targets if spec.targets is not None else table.labels
        for label in labels:
            series = table.column(label) ** spec.power
            name = label if len(tables) == 1 else f"{stem}: {label}"
            ax.plot(table.times, series, label=name)
            legend.append(name)
    if not legend:
        plt.close(fig)
        raise FigvizError("nothing to draw: no matching columns")
    ax.set_xlabel("time")
    ax.set_ylabel("probability")
    ax.set_ylim(VMIN - 0.02, VMAX + 0.02)
    ax.legend(loc="best", fontsize=8)
    if spec.title:
        ax.set_title(spec.title)
    fig.savefig(spec.output, dpi=DPI)
    plt.close(fig)
    return CurvesRender(spec.output, legend)
