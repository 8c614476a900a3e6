"""Local features: smoothing, direction angles, orders 0/1/2."""

from __future__ import annotations

import numpy as np

from curvematch import (
    FEATURE_COUNT,
    angle_at,
    angle_feature_mask,
    base_coordinates,
    feature_index,
    feature_matrix,
    smooth,
)
from curvematch.features import SmoothedCurve, direction_angles


def _circle(n: int = 60, r: float = 1.0) -> np.ndarray:
    angles = np.linspace(0.0, 2 * np.pi, n, endpoint=False)
    return np.column_stack([r * np.cos(angles), r * np.sin(angles)])


def test_smoothing_window_three_averages_neighbours():
    rng = np.random.default_rng(3)
    pts = rng.normal(size=(60, 2))
    sm = smooth(pts, 3)
    assert np.allclose(sm.points[0], (pts[59] + pts[0] + pts[1]) / 3)
    assert np.allclose(sm.points[30], pts[29:32].mean(axis=0))


def test_smoothing_constant_curve_is_identity():
    pts = np.tile([2.5, -1.0], (60, 1))
    for window in (3, 7, 13):
        assert np.allclose(smooth(pts, window).points, pts)


def test_smoothing_alternating_width_flips_to_thirds():
    pts = np.zeros((60, 2))
    pts[:, 0] = np.where(np.arange(60) % 2 == 0, 1.0, -1.0)
    sm = smooth(pts, 3)
    expected = np.where(np.arange(60) % 2 == 0, -1 / 3, 1 / 3)
    assert np.allclose(sm.points[:, 0], expected)


def test_direction_angle_conventions():
    # three-point wedge: at index 1, predecessor (0,0) and successor (1,0)
    east = SmoothedCurve(window=1, points=np.array([[0, 0], [5, 5], [1, 0]], dtype=float))
    assert angle_at(east, 1) == 0.0
    south = SmoothedCurve(window=1, points=np.array([[0, 0], [5, 5], [0, 1]], dtype=float))
    assert angle_at(south, 1) == 90.0
    north = SmoothedCurve(window=1, points=np.array([[0, 0], [5, 5], [0, -1]], dtype=float))
    assert angle_at(north, 1) == 270.0


def test_coincident_neighbours_give_180():
    out_and_back = SmoothedCurve(
        window=1, points=np.array([[0.0, 0.0], [1.0, 1.0], [0.0, 0.0]])
    )
    assert angle_at(out_and_back, 1) == 180.0


def test_angles_stay_in_range_on_random_curves():
    rng = np.random.default_rng(9)
    for _ in range(10):
        a = direction_angles(rng.normal(size=(60, 2)))
        assert ((a >= 0) & (a < 360)).all()


def test_base_coordinates_sum_and_difference_are_exact():
    rng = np.random.default_rng(10)
    sm = smooth(rng.normal(size=(60, 2)), 7)
    base = base_coordinates(sm)
    assert np.array_equal(base[:, 2], base[:, 0] + base[:, 1])
    assert np.array_equal(base[:, 3], base[:, 0] - base[:, 1])


def test_feature_matrix_shape_and_angle_mask():
    fm = feature_matrix(_circle())
    assert fm.values.shape == (60, FEATURE_COUNT)
    assert FEATURE_COUNT == 45
    assert fm.angle_mask.sum() == 9
    assert np.array_equal(fm.angle_mask, angle_feature_mask())
    for window in (3, 7, 13):
        for order in range(3):
            assert fm.angle_mask[feature_index(window, "alpha", order)]


def test_order_zero_equals_smoothed_base():
    pts = _circle()
    fm = feature_matrix(pts)
    assert np.array_equal(
        fm.values[:, feature_index(3, "w", 0)], smooth(pts, 3).points[:, 0]
    )
    assert np.array_equal(
        fm.values[:, feature_index(13, "h", 0)], smooth(pts, 13).points[:, 1]
    )


def test_circle_angle_first_difference_is_twelve_degrees():
    fm = feature_matrix(_circle())
    for window in (3, 7, 13):
        column = fm.values[:, feature_index(window, "alpha", 1)]
        assert np.allclose(column, 12.0, atol=1e-9)


def test_constant_curve_has_zero_differences():
    pts = np.tile([0.4, 1.2], (60, 1))
    fm = feature_matrix(pts)
    for window in (3, 7, 13):
        for base in ("w", "h", "w+h", "w-h"):
            assert np.all(fm.values[:, feature_index(window, base, 1)] == 0)
            assert np.all(fm.values[:, feature_index(window, base, 2)] == 0)


def test_angle_differences_wrap_across_the_seam():
    # on a circle the direction angle sweeps through the 360 -> 0 boundary;
    # wrapped first differences stay at +-12 with one consistent sign, and
    # wrapped second differences stay near zero, instead of jumping by ~360
    fm = feature_matrix(_circle(), signed=True)
    for window in (3, 7, 13):
        d1 = fm.values[:, feature_index(window, "alpha", 1)]
        d2 = fm.values[:, feature_index(window, "alpha", 2)]
        assert np.allclose(np.abs(d1), 12.0, atol=1e-9)
        assert len(np.unique(np.sign(d1))) == 1
        assert np.abs(d2).max() < 1e-9


def test_cyclic_shift_shifts_rows_bit_exactly():
    rng = np.random.default_rng(12)
    pts = rng.normal(size=(60, 2))
    shifted = np.roll(pts, 17, axis=0)
    fm = feature_matrix(pts)
    fm_shifted = feature_matrix(shifted)
    assert np.array_equal(fm_shifted.values, np.roll(fm.values, 17, axis=0))


def test_signed_flag_drops_absolute_values():
    rng = np.random.default_rng(13)
    pts = rng.normal(size=(60, 2))
    plain = feature_matrix(pts)
    signed = feature_matrix(pts, signed=True)
    order = np.arange(45) % 3
    # order-0 columns carry the smoothed coordinate itself in both variants
    assert np.array_equal(signed.values[:, order == 0], plain.values[:, order == 0])
    diffs = order != 0
    assert np.array_equal(np.abs(signed.values[:, diffs]), plain.values[:, diffs])
    assert (signed.values[:, diffs] < 0).any()
