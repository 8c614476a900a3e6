"""Digit classification by mean potential against a fixed pattern set.

Every digit exemplar is scored against each of the 10 patterns; the pattern
with the minimal mean potential wins. A best mean above the rejection
threshold means no pattern really matches and the exemplar is rejected.
Untraceable exemplars become report rows with empty scores, not aborts.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np

from .errors import CurveMatchError
from .ingest import GRAY_LIMIT, BinaryMask, LabeledDigit, threshold
from .potential import build_potential, default_weights
from .search import SearchConfig, canonical_path, mask_features

REJECTION_THRESHOLD = 13.0

CSV_HEADER = "index,label," + ",".join(f"s{k}" for k in range(10)) + ",best,rejected"


@dataclass(frozen=True)
class ClassifyRow:
    """Result for one digit exemplar; scores is None when the digit failed."""

    index: int
    label: int
    scores: tuple[float, ...] | None
    best: int | None
    rejected: bool
    error: str | None = None


@dataclass(frozen=True)
class ClassifyReport:
    rows: tuple[ClassifyRow, ...]
    threshold: float

    def accuracy(self) -> float:
        """Fraction of scored, non-rejected rows whose best pattern is the label."""
        hits = [r.best == r.label for r in self.rows if r.scores is not None and not r.rejected]
        return float(np.mean(hits)) if hits else 0.0


def classify(
    digits: list[LabeledDigit],
    patterns: list[BinaryMask],
    weights: np.ndarray | None = None,
    config: SearchConfig | None = None,
    rejection: float = REJECTION_THRESHOLD,
    gray_limit: int = GRAY_LIMIT,
) -> ClassifyReport:
    """Score each digit against each pattern and pick the best match.

    Pattern masks must all trace; a broken pattern is a hard error. Digit
    failures (for example an untraceable mask) produce rows with empty scores
    and the rejected flag set.
    """
    config = config or SearchConfig()
    if weights is None:
        weights = default_weights()
    pattern_features = [mask_features(p) for p in patterns]

    rows = []
    for digit in digits:
        try:
            fx = mask_features(threshold(digit.image, limit=gray_limit))
            scores = tuple(
                canonical_path(build_potential(fx, fp, weights), config).mean_potential
                for fp in pattern_features
            )
        except CurveMatchError as exc:
            rows.append(
                ClassifyRow(
                    index=digit.index,
                    label=digit.label,
                    scores=None,
                    best=None,
                    rejected=True,
                    error=f"{exc.stage}: {exc}",
                )
            )
            continue
        best = int(np.argmin(scores))
        rows.append(
            ClassifyRow(
                index=digit.index,
                label=digit.label,
                scores=scores,
                best=best,
                rejected=scores[best] > rejection,
            )
        )
    return ClassifyReport(rows=tuple(rows), threshold=rejection)


def report_to_csv(report: ClassifyReport) -> str:
    """Serialize a report with the fixed header index,label,s0..s9,best,rejected."""
    out = io.StringIO()
    out.write(CSV_HEADER + "\n")
    for row in report.rows:
        if row.scores is None:
            scores = [""] * 10
            best = ""
        else:
            scores = [repr(float(s)) for s in row.scores]
            best = str(row.best)
        rejected = "true" if row.rejected else "false"
        out.write(f"{row.index},{row.label},{','.join(scores)},{best},{rejected}\n")
    return out.getvalue()
