"""Heatmap rendering of potential tori as binary PPM images.

The torus is drawn with index i running left to right and j top to bottom,
one square block of pixels per cell. Potential values map monotonically from
a dark green low anchor to a gray high anchor, normalized to the torus
min/max. Cells on the canonical path are overdrawn with a separate ramp so
small differences along the valley stay visible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .potential import PotentialTorus
from .search import TorusPath

RGB = tuple[int, int, int]


@dataclass(frozen=True)
class HeatmapSpec:
    cell_size: int = 8
    low: RGB = (0, 100, 0)
    high: RGB = (190, 190, 190)
    path_low: RGB = (120, 0, 0)
    path_high: RGB = (255, 240, 60)


def _ramp(t: np.ndarray, low: RGB, high: RGB) -> np.ndarray:
    """Linear color ramp; t has shape (...,), result (..., 3) uint8."""
    lo = np.asarray(low, dtype=np.float64)
    hi = np.asarray(high, dtype=np.float64)
    rgb = lo + t[..., None] * (hi - lo)
    return np.rint(np.clip(rgb, 0, 255)).astype(np.uint8)


def render_heatmap(
    torus: PotentialTorus | np.ndarray,
    path: TorusPath | None = None,
    spec: HeatmapSpec | None = None,
) -> bytes:
    """Render the torus (and optionally a path overlay) as a P6 PPM image."""
    spec = spec or HeatmapSpec()
    v = torus.values if isinstance(torus, PotentialTorus) else np.asarray(torus, dtype=np.float64)
    ni, nj = v.shape
    span = float(v.max() - v.min())
    t = (v - v.min()) / span if span > 0 else np.zeros_like(v)

    cells = _ramp(t, spec.low, spec.high)
    if path is not None:
        overlay = _ramp(t, spec.path_low, spec.path_high)
        pi, pj = path.cells[:, 0], path.cells[:, 1]
        cells[pi, pj] = overlay[pi, pj]

    # cells is indexed (i, j); pixels are (row=j, col=i)
    pixels = np.repeat(np.repeat(cells.transpose(1, 0, 2), spec.cell_size, axis=0), spec.cell_size, axis=1)
    height, width = pixels.shape[:2]
    return b"P6\n%d %d\n255\n" % (width, height) + pixels.tobytes()
