"""Potential torus: weighted feature distance between all point pairs.

V(i, j) is the weighted sum of absolute differences between the feature
vector of point i on curve X and point j on curve Y. Both curve indices are
cyclic, so V lives on a discrete torus. Low potential marks locally similar
point pairs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .features import FEATURE_COUNT, FeatureMatrix, angle_feature_mask

ANGLE_WEIGHT = 3.0
OTHER_WEIGHT = 1.0
_PER_DEGREE = math.pi / 180.0


@dataclass(frozen=True)
class PotentialTorus:
    """values[i, j]: potential between point i of X and point j of Y."""

    values: np.ndarray

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape


def default_weights(angle: float = ANGLE_WEIGHT, other: float = OTHER_WEIGHT) -> np.ndarray:
    """Per-feature weight vector: `angle` per radian of angle difference for
    the 9 alpha features, `other` for the 36 coordinate features.

    Feature matrices store angles in degrees, so the angle weight is folded
    together with the degree-to-radian conversion. Weighting radian-valued
    angle differences by 3 keeps them on the same footing as the coordinate
    features (which live in height-normalized units of order 1); a literal
    3-per-degree multiplier would let any angular mismatch drown out all
    other features.
    """
    return np.where(angle_feature_mask(), float(angle) * _PER_DEGREE, float(other))


def build_potential(
    fx: FeatureMatrix | np.ndarray,
    fy: FeatureMatrix | np.ndarray,
    weights: np.ndarray | None = None,
) -> PotentialTorus:
    """Build V(i, j) = sum_k weights[k] * |fx[i, k] - fy[j, k]|.

    The accumulation runs feature by feature with elementwise operations, so
    every cell sums its terms in the same order; cyclically relabeled inputs
    therefore produce exactly relabeled tori.
    """
    x = fx.values if isinstance(fx, FeatureMatrix) else np.asarray(fx, dtype=np.float64)
    y = fy.values if isinstance(fy, FeatureMatrix) else np.asarray(fy, dtype=np.float64)
    if x.ndim != 2 or y.ndim != 2 or x.shape[1] != y.shape[1]:
        raise ValueError(f"feature matrices disagree in shape: {x.shape} vs {y.shape}")
    if weights is None:
        if x.shape[1] != FEATURE_COUNT:
            raise ValueError(f"default weights need {FEATURE_COUNT} features, got {x.shape[1]}")
        weights = default_weights()
    w = np.asarray(weights, dtype=np.float64)
    if w.shape != (x.shape[1],):
        raise ValueError(f"need {x.shape[1]} weights, got shape {w.shape}")
    if (w < 0).any() or not (w > 0).any():
        raise ValueError("weights must be nonnegative and not all zero")

    values = np.zeros((x.shape[0], y.shape[0]))
    for k in range(x.shape[1]):
        values += w[k] * np.abs(x[:, k, None] - y[None, :, k])
    return PotentialTorus(values=values)
