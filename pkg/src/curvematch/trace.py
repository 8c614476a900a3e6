"""Borderline tracing on binary masks.

A border point is an inside point with at least one of its 8 neighbours
outside the mask (off-lattice counts as outside). Tracing rotates clockwise
in image coordinates (w rightward, h downward) through the neighbours of the
current point, starting just after the direction of the previous point, and
takes the first border point found. The walk ends when the first directed
point pair repeats.

Points are (w, h) pairs throughout; curve arrays have shape (n, 2) with
columns (w, h).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Literal

import numpy as np

from .errors import TraceError
from .ingest import BinaryMask

Orientation = Literal["right", "left"]
RIGHT: Orientation = "right"
LEFT: Orientation = "left"

# 8 neighbour offsets (dw, dh) in clockwise order for h-down image coordinates.
DIRECTIONS = ((1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1))
_DIR_INDEX = {d: k for k, d in enumerate(DIRECTIONS)}


@dataclass(frozen=True)
class ClosedCurve:
    """Cyclic sequence of lattice points; consecutive points are 8-neighbours."""

    points: np.ndarray
    orientation: Orientation

    def __len__(self) -> int:
        return len(self.points)


def _border_array(mask: BinaryMask) -> np.ndarray:
    """Boolean [h, w] array of border points."""
    inside = mask.inside
    padded = np.pad(inside, 1, constant_values=False)
    all_neighbours_inside = np.ones_like(inside, dtype=bool)
    for dw, dh in DIRECTIONS:
        h0, w0 = 1 + dh, 1 + dw
        all_neighbours_inside &= padded[h0 : h0 + inside.shape[0], w0 : w0 + inside.shape[1]]
    return inside & ~all_neighbours_inside


def border_points(mask: BinaryMask) -> set[tuple[int, int]]:
    """All (w, h) points inside the mask with an outside 8-neighbour."""
    hs, ws = np.nonzero(_border_array(mask))
    return {(int(w), int(h)) for w, h in zip(ws, hs)}


def _is_border(border: np.ndarray, w: int, h: int) -> bool:
    return 0 <= h < border.shape[0] and 0 <= w < border.shape[1] and bool(border[h, w])


def _successor(border: np.ndarray, p: tuple[int, int], q: tuple[int, int]) -> tuple[int, int]:
    """First border point clockwise around q, starting just after the direction of p."""
    start = _DIR_INDEX[(p[0] - q[0], p[1] - q[1])]
    for k in range(1, 9):
        dw, dh = DIRECTIONS[(start + k) % 8]
        cand = (q[0] + dw, q[1] + dh)
        if _is_border(border, cand[0], cand[1]):
            return cand
    raise TraceError(f"no border successor around {q}")


def _start_pair(border: np.ndarray, p: tuple[int, int]) -> tuple[tuple[int, int], tuple[int, int]] | None:
    """Canonical start pair at p: first border neighbour clockwise from East."""
    for dw, dh in DIRECTIONS:
        q = (p[0] + dw, p[1] + dh)
        if _is_border(border, q[0], q[1]):
            return p, q
    return None


def _shoelace2(points: np.ndarray) -> int:
    """Twice the signed area of the cyclic polygon (exact, integer points)."""
    w = points[:, 0].astype(np.int64)
    h = points[:, 1].astype(np.int64)
    return int(np.sum(w * np.roll(h, -1) - np.roll(w, -1) * h))


def orientation_of(curve: ClosedCurve | np.ndarray) -> Orientation:
    """Right iff the traversal is clockwise in image coordinates (h downward).

    Zero-area curves (the degenerate out-and-back strokes, including 2-point
    curves) count as right by convention.
    """
    points = curve.points if isinstance(curve, ClosedCurve) else np.asarray(curve)
    if len(points) < 3:
        return RIGHT
    return RIGHT if _shoelace2(points) >= 0 else LEFT


def trace_from(
    mask: BinaryMask, start: tuple[tuple[int, int], tuple[int, int]]
) -> ClosedCurve:
    """Trace the borderline through the directed start pair (P, Q).

    P and Q must be adjacent border points. The returned cyclic curve is the
    point sequence up to (excluding) the repetition of the start pair.
    """
    border = _border_array(mask)
    p, q = tuple(start[0]), tuple(start[1])
    if not (_is_border(border, *p) and _is_border(border, *q)):
        raise TraceError(f"start pair {p}->{q} is not a pair of border points")
    if max(abs(p[0] - q[0]), abs(p[1] - q[1])) != 1:
        raise TraceError(f"start points {p} and {q} are not 8-neighbours")

    budget = 8 * int(border.sum()) + 1
    points = [p, q]
    for _ in range(budget):
        succ = _successor(border, points[-2], points[-1])
        if (points[-1], succ) == (p, q):
            cycle = np.array(points[:-1], dtype=np.int64)
            return ClosedCurve(points=cycle, orientation=orientation_of(cycle))
        points.append(succ)
    raise TraceError(f"tracing did not close within {budget} steps")


def _iter_borderlines(mask: BinaryMask) -> Iterator[ClosedCurve]:
    """Distinct borderlines, one per canonical start in row-major scan order."""
    border = _border_array(mask)
    visited = np.zeros_like(border)
    for h, w in zip(*np.nonzero(border)):
        if visited[h, w]:
            continue
        pair = _start_pair(border, (int(w), int(h)))
        if pair is None:
            visited[h, w] = True  # isolated pixel, cannot anchor a curve
            continue
        curve = trace_from(mask, pair)
        visited[curve.points[:, 1], curve.points[:, 0]] = True
        yield curve


def outer_borderline(mask: BinaryMask) -> ClosedCurve:
    """The right-oriented borderline that runs around the digit.

    Left-oriented contours (holes) are discarded. If the mask splits into
    several right-oriented contours, the one enclosing the largest area wins.
    """
    if not mask.inside.any():
        raise TraceError("mask has no inside points")
    best: ClosedCurve | None = None
    best_area = -1
    for curve in _iter_borderlines(mask):
        if curve.orientation != RIGHT:
            continue
        area = abs(_shoelace2(curve.points))
        if area > best_area:
            best, best_area = curve, area
    if best is None:
        raise TraceError("no right-oriented borderline found")
    return best
