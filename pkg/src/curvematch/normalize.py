"""Equal arc-length resampling and coordinate normalization.

The traced curve is treated as a closed polygon (closing edge included) and
divided into 60 arcs of the same length, starting at curve point 0. The
resampled points are then normalized: heights are mapped to [0, 1] and widths
are centered on their mean, both scaled by the height span d.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NormalizationError
from .trace import ClosedCurve

RESAMPLE_COUNT = 60


@dataclass(frozen=True)
class NormalizedCurve:
    """60 cyclic (W, H) pairs with H in [0, 1] and W centered on 0."""

    points: np.ndarray
    d: float

    def __len__(self) -> int:
        return len(self.points)

    @property
    def w(self) -> np.ndarray:
        return self.points[:, 0]

    @property
    def h(self) -> np.ndarray:
        return self.points[:, 1]


def _as_points(curve: ClosedCurve | np.ndarray) -> np.ndarray:
    pts = curve.points if isinstance(curve, ClosedCurve) else np.asarray(curve)
    pts = pts.astype(np.float64)
    if pts.ndim != 2 or pts.shape[1] != 2 or len(pts) < 2:
        raise NormalizationError("curve must be at least 2 points of shape (n, 2)")
    return pts


def resample(curve: ClosedCurve | np.ndarray, count: int = RESAMPLE_COUNT) -> np.ndarray:
    """Resample the closed polygon to `count` points of equal arc spacing.

    Point k sits at arc-length position k*L/count measured from curve point 0,
    where L is the full perimeter including the edge closing the polygon.
    Coordinates are interpolated linearly along the edges.
    """
    pts = _as_points(curve)
    ring = np.vstack([pts, pts[:1]])
    seg = np.hypot(np.diff(ring[:, 0]), np.diff(ring[:, 1]))
    arc = np.concatenate([[0.0], np.cumsum(seg)])
    total = arc[-1]
    if not total > 0.0:
        raise NormalizationError("curve has zero perimeter")
    targets = np.arange(count) * total / count
    return np.column_stack(
        [np.interp(targets, arc, ring[:, 0]), np.interp(targets, arc, ring[:, 1])]
    )


def normalize_coords(points: np.ndarray) -> NormalizedCurve:
    """Normalize resampled points: H spans [0, 1], W is centered, both over d.

    d is the height span max h - min h over the resampled points; W subtracts
    the mean w of the resampled points. A curve with zero height span cannot
    be normalized.
    """
    pts = np.asarray(points, dtype=np.float64)
    h = pts[:, 1]
    w = pts[:, 0]
    h_min = h.min()
    d = float(h.max() - h_min)
    if d <= 0.0:
        raise NormalizationError("curve has zero height span")
    return NormalizedCurve(
        points=np.column_stack([(w - w.mean()) / d, (h - h_min) / d]), d=d
    )


def normalized_from_curve(curve: ClosedCurve, count: int = RESAMPLE_COUNT) -> NormalizedCurve:
    """Resample and normalize a traced curve.

    Lattice points are shifted to put curve point 0 at the origin first. The
    shift changes nothing mathematically (normalization subtracts min and mean
    anyway) but keeps the floating-point results bit-identical when the source
    mask is translated on the canvas.
    """
    based = curve.points - curve.points[0]
    return normalize_coords(resample(based, count))
