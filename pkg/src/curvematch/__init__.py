"""Similarity of closed discrete-plane curves.

The pipeline traces the borderline of a binarized digit raster, resamples it
to 60 points, normalizes coordinates, extracts 45 local features per point,
builds a 60x60 potential torus against a second curve and scores similarity
as the mean potential along a canonical valley-following path.
"""

from .classify import (
    REJECTION_THRESHOLD,
    ClassifyReport,
    ClassifyRow,
    classify,
    report_to_csv,
)
from .errors import (
    CurveMatchError,
    IdxFormatError,
    NormalizationError,
    PatternError,
    SearchError,
    TraceError,
)
from .features import (
    FEATURE_COUNT,
    WINDOWS,
    FeatureMatrix,
    SmoothedCurve,
    angle_at,
    angle_feature_mask,
    base_coordinates,
    direction_angles,
    feature_index,
    feature_matrix,
    smooth,
)
from .ingest import (
    GRAY_LIMIT,
    BinaryMask,
    GrayImage,
    LabeledDigit,
    load_labeled_digits,
    load_pattern,
    load_pattern_file,
    parse_idx_images,
    parse_idx_labels,
    threshold,
    write_idx_images,
    write_idx_labels,
)
from .normalize import (
    RESAMPLE_COUNT,
    NormalizedCurve,
    normalize_coords,
    normalized_from_curve,
    resample,
)
from .potential import PotentialTorus, build_potential, default_weights
from .render import HeatmapSpec, render_heatmap
from .search import (
    MatchResult,
    SearchConfig,
    TorusPath,
    canonical_path,
    canonical_path_base,
    canonical_path_lookahead,
    canonical_path_multistart,
    greedy_walk,
    lookahead_sums,
    mask_features,
    similarity,
)
from .trace import (
    ClosedCurve,
    border_points,
    orientation_of,
    outer_borderline,
    trace_from,
)

__all__ = [
    "REJECTION_THRESHOLD",
    "ClassifyReport",
    "ClassifyRow",
    "classify",
    "report_to_csv",
    "CurveMatchError",
    "IdxFormatError",
    "NormalizationError",
    "PatternError",
    "SearchError",
    "TraceError",
    "FEATURE_COUNT",
    "WINDOWS",
    "FeatureMatrix",
    "SmoothedCurve",
    "angle_at",
    "angle_feature_mask",
    "base_coordinates",
    "direction_angles",
    "feature_index",
    "feature_matrix",
    "smooth",
    "GRAY_LIMIT",
    "BinaryMask",
    "GrayImage",
    "LabeledDigit",
    "load_labeled_digits",
    "load_pattern",
    "load_pattern_file",
    "parse_idx_images",
    "parse_idx_labels",
    "threshold",
    "write_idx_images",
    "write_idx_labels",
    "RESAMPLE_COUNT",
    "NormalizedCurve",
    "normalize_coords",
    "normalized_from_curve",
    "resample",
    "PotentialTorus",
    "build_potential",
    "default_weights",
    "HeatmapSpec",
    "render_heatmap",
    "MatchResult",
    "SearchConfig",
    "TorusPath",
    "canonical_path",
    "canonical_path_base",
    "canonical_path_lookahead",
    "canonical_path_multistart",
    "greedy_walk",
    "lookahead_sums",
    "mask_features",
    "similarity",
    "ClosedCurve",
    "border_points",
    "orientation_of",
    "outer_borderline",
    "trace_from",
    "__version__",
]

__version__ = "0.1.0"
