"""Reader for the walk CSV format (header ``t,<labels...>``)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List

import numpy as np


class FigvizError(Exception):
    """Malformed input or an unusable figure specification."""


@dataclass
class WalkTable:
    """One parsed CSV: a time column plus one probability column per label."""

    times: np.ndarray
    labels: List[str]
    probs: np.ndarray  # shape (n_times, n_labels)

    def column(self, label: str) -> np.ndarray:
        try:
            return self.probs[:, self.labels.index(label)]
        except ValueError:
            raise FigvizError(f"no column {label!r}; have {self.labels[:8]}...")


def read_walk_csv(path: str) -> WalkTable:
    """Parse a walk CSV; ``#`` comment lines and blank lines are skipped."""
    try:
        with open(path) as fh:
            lines = [ln.strip() for ln in fh]
    except OSError as exc:
        raise FigvizError(f"cannot read {path}: {exc}")
    rows = [ln for ln in lines if ln and not ln.startswith("#")]
    if not rows:
        raise FigvizError(f"{path}: empty file")
    header = rows[0].split(",")
    if header[0] != "t" or len(header) < 2:
        raise FigvizError(f"{path}: header must be 't,<labels...>', got {rows[0]!r}")
    labels = header[1:]
    data = []
    for ln in rows[1:]:
        cells = ln.split(",")
        if len(cells) != len(header):
            raise FigvizError(f"{path}: row has {len(cells)} cells, header has {len(header)}")
        try:
            data.append([float(c) for c in cells])
        except ValueError:
            raise FigvizError(f"{path}: non-numeric cell in row {ln!r}")
    if not data:
        raise FigvizError(f"{path}: no data rows")
    table = np.asarray(data)
    return WalkTable(times=table[:, 0], labels=labels, probs=table[:, 1:])
