"""Local feature extraction: 45 features per curve point.

Three smoothing levels (windows 3, 7, 13), five base coordinates per smoothed
curve (w, h, w+h, w-h, direction angle alpha) and three difference orders
(0, 1, 2) give 3 * 5 * 3 = 45 features at each of the 60 points. Differences
are taken between the successor and the predecessor of a point; orders 1 and
2 store absolute values by default, with a flag for the signed reading.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .normalize import NormalizedCurve

WINDOWS = (3, 7, 13)
BASE_NAMES = ("w", "h", "w+h", "w-h", "alpha")
ORDER_COUNT = 3
FEATURE_COUNT = len(WINDOWS) * len(BASE_NAMES) * ORDER_COUNT

_ANGLE_BASE = BASE_NAMES.index("alpha")
_DEGENERATE_STEP = 1e-12


@dataclass(frozen=True)
class SmoothedCurve:
    """Cyclic centered moving average of a normalized curve."""

    window: int
    points: np.ndarray


@dataclass(frozen=True)
class FeatureMatrix:
    """values[i, k]: feature k at curve point i.

    Feature index k = window_index * 15 + base_index * 3 + order, windows in
    (3, 7, 13) order and bases in (w, h, w+h, w-h, alpha) order. angle_mask
    flags the 9 features derived from alpha.
    """

    values: np.ndarray
    angle_mask: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", np.asarray(self.values, dtype=np.float64))


def feature_index(window: int, base: str, order: int) -> int:
    """Flat index of the (window, base coordinate, difference order) feature."""
    return WINDOWS.index(window) * 15 + BASE_NAMES.index(base) * 3 + order


def angle_feature_mask() -> np.ndarray:
    """Boolean mask over the 45 feature indices; True for alpha-derived ones."""
    mask = np.zeros(FEATURE_COUNT, dtype=bool)
    for wi in range(len(WINDOWS)):
        for order in range(ORDER_COUNT):
            mask[wi * 15 + _ANGLE_BASE * 3 + order] = True
    return mask


def _curve_points(curve: NormalizedCurve | np.ndarray) -> np.ndarray:
    pts = curve.points if isinstance(curve, NormalizedCurve) else np.asarray(curve)
    return pts.astype(np.float64)


def smooth(curve: NormalizedCurve | np.ndarray, window: int) -> SmoothedCurve:
    """Cyclic centered moving average over `window` points (odd width)."""
    pts = _curve_points(curve)
    n = len(pts)
    if window % 2 == 0 or window < 1 or window >= n:
        raise ValueError(f"window must be odd and in [1, {n}), got {window}")
    half = window // 2
    acc = np.zeros_like(pts)
    for offset in range(-half, half + 1):
        acc += np.roll(pts, -offset, axis=0)
    return SmoothedCurve(window=window, points=acc / window)


def direction_angles(points: np.ndarray) -> np.ndarray:
    """Direction angle per point: the angle of (successor - predecessor).

    Angles are degrees in [0, 360), measured in image coordinates (0 points
    rightward, 90 downward). A point whose successor and predecessor coincide
    (within 1e-12) gets 180, matching the out-and-back degenerate case.
    """
    pts = np.asarray(points, dtype=np.float64)
    dw = np.roll(pts[:, 0], -1) - np.roll(pts[:, 0], 1)
    dh = np.roll(pts[:, 1], -1) - np.roll(pts[:, 1], 1)
    deg = np.degrees(np.arctan2(dh, dw)) % 360.0
    deg = np.where(deg >= 360.0, 0.0, deg)
    return np.where(np.hypot(dw, dh) <= _DEGENERATE_STEP, 180.0, deg)


def angle_at(curve: SmoothedCurve, i: int) -> float:
    """Direction angle at point i of a smoothed curve."""
    return float(direction_angles(curve.points)[i % len(curve.points)])


def base_coordinates(curve: SmoothedCurve) -> np.ndarray:
    """Per-point base coordinate matrix with columns (w, h, w+h, w-h, alpha)."""
    w = curve.points[:, 0]
    h = curve.points[:, 1]
    return np.column_stack([w, h, w + h, w - h, direction_angles(curve.points)])


def _wrap_degrees(x: np.ndarray) -> np.ndarray:
    """Minimal representative of an angle difference, in (-180, 180]."""
    y = (x + 180.0) % 360.0 - 180.0
    return np.where(y == -180.0, 180.0, y)


def _successor_minus_predecessor(x: np.ndarray, angular: np.ndarray) -> np.ndarray:
    diff = np.roll(x, -1, axis=0) - np.roll(x, 1, axis=0)
    return np.where(angular, _wrap_degrees(diff), diff)


def feature_matrix(curve: NormalizedCurve | np.ndarray, signed: bool = False) -> FeatureMatrix:
    """Build the 60x45 feature matrix of a normalized curve.

    Order 0 is the base coordinate itself; order 1 at i is the difference
    base(i+1) - base(i-1); order 2 differences the signed order-1 values the
    same way. Angle differences are wrapped to (-180, 180] at both orders.
    With signed=False (the default) orders 1 and 2 store absolute values.
    """
    pts = _curve_points(curve)
    blocks = []
    angular = np.arange(len(BASE_NAMES)) == _ANGLE_BASE
    for window in WINDOWS:
        base = base_coordinates(smooth(pts, window))
        d1 = _successor_minus_predecessor(base, angular)
        d2 = _successor_minus_predecessor(d1, angular)
        if not signed:
            d1 = np.abs(d1)
            d2 = np.abs(d2)
        # interleave to (base, order) layout: columns b*3+0, b*3+1, b*3+2
        block = np.empty((len(pts), len(BASE_NAMES) * 3))
        block[:, 0::3] = base
        block[:, 1::3] = d1
        block[:, 2::3] = d2
        blocks.append(block)
    return FeatureMatrix(values=np.hstack(blocks), angle_mask=angle_feature_mask())
