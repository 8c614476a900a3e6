"""Exception types raised by the pipeline, one family per stage."""

from __future__ import annotations


class CurveMatchError(Exception):
    """Base class for all pipeline errors. `stage` names the failing stage."""

    stage = "pipeline"


class IdxFormatError(CurveMatchError):
    """Malformed IDX file: wrong magic, bad length, or invalid label."""

    stage = "ingest"


class PatternError(CurveMatchError):
    """Malformed pattern text: ragged rows, bad characters, or empty."""

    stage = "ingest"


class TraceError(CurveMatchError):
    """Borderline tracing failed: empty mask, isolated pixel, or no right-oriented contour."""

    stage = "trace"


class NormalizationError(CurveMatchError):
    """Curve cannot be normalized: zero perimeter or zero height span."""

    stage = "normalize"


class SearchError(CurveMatchError):
    """Path search failed, e.g. step budget exhausted under random ties."""

    stage = "search"
