"""Tests for pattern-based digit classification and its CSV report."""

import numpy as np
import pytest

from curvematch.classify import (
    CSV_HEADER,
    REJECTION_THRESHOLD,
    ClassifyReport,
    ClassifyRow,
    classify,
    report_to_csv,
)
from curvematch.errors import CurveMatchError
from curvematch.ingest import GrayImage, LabeledDigit
from curvematch.search import SearchConfig

DET = SearchConfig(tie="deterministic")


def _digit_from_mask(mask, index, label):
    """Wrap a pattern mask as a fake labeled digit (inside -> gray 255)."""
    pixels = np.where(mask.inside, 255, 0).astype(np.uint8)
    return LabeledDigit(image=GrayImage(pixels=pixels), label=label, index=index)


def _blank_digit(index, label):
    return LabeledDigit(
        image=GrayImage(pixels=np.zeros((28, 28), dtype=np.uint8)), label=label, index=index
    )


def test_patterns_classify_themselves_exactly(pattern_masks):
    digits = [_digit_from_mask(m, i, i) for i, m in enumerate(pattern_masks)]
    report = classify(digits, pattern_masks, config=DET)
    assert len(report.rows) == 10
    for row in report.rows:
        assert row.scores is not None
        assert row.best == row.label
        assert row.scores[row.label] == 0.0
        assert not row.rejected
        assert min(row.scores[k] for k in range(10) if k != row.label) > 0.0
    assert report.accuracy() == 1.0


def test_untraceable_digit_becomes_a_rejected_row(pattern_masks):
    digits = [_blank_digit(0, 3), _digit_from_mask(pattern_masks[5], 1, 5)]
    report = classify(digits, pattern_masks, config=DET)
    bad, good = report.rows
    assert bad.scores is None and bad.best is None
    assert bad.rejected
    assert bad.error is not None and bad.error.startswith("trace")
    assert good.scores is not None and good.best == 5


def test_broken_pattern_is_a_hard_error(pattern_masks):
    from curvematch.ingest import BinaryMask

    blank = BinaryMask(inside=np.zeros((28, 28), dtype=bool))
    digits = [_digit_from_mask(pattern_masks[0], 0, 0)]
    with pytest.raises(CurveMatchError):
        classify(digits, pattern_masks[:9] + [blank], config=DET)


def test_rejection_threshold_flag(pattern_masks):
    digits = [_digit_from_mask(pattern_masks[2], 0, 2)]
    strict = classify(digits, pattern_masks, config=DET, rejection=-1.0)
    assert strict.rows[0].rejected  # best score 0.0 > -1.0
    lax = classify(digits, pattern_masks, config=DET, rejection=0.0)
    assert not lax.rows[0].rejected  # 0.0 is not above the threshold
    assert strict.rows[0].best == 2  # rejection does not blank the best guess


def test_gray_limit_is_forwarded(pattern_masks):
    pixels = np.zeros((28, 28), dtype=np.uint8)
    pixels[8:20, 8:20] = 70  # below the default limit of 80
    digit = LabeledDigit(image=GrayImage(pixels=pixels), label=0, index=0)
    default = classify([digit], pattern_masks, config=DET)
    assert default.rows[0].scores is None
    lowered = classify([digit], pattern_masks, config=DET, gray_limit=50)
    assert lowered.rows[0].scores is not None


def test_accuracy_ignores_failed_and_rejected_rows():
    rows = (
        ClassifyRow(index=0, label=1, scores=(0.0,) * 10, best=1, rejected=False),
        ClassifyRow(index=1, label=2, scores=(0.0,) * 10, best=3, rejected=False),
        ClassifyRow(index=2, label=4, scores=None, best=None, rejected=True),
        ClassifyRow(index=3, label=5, scores=(99.0,) * 10, best=5, rejected=True),
    )
    report = ClassifyReport(rows=rows, threshold=REJECTION_THRESHOLD)
    assert report.accuracy() == 0.5


def test_csv_layout_and_bit_identical_reruns(pattern_masks):
    digits = [
        _digit_from_mask(pattern_masks[7], 0, 7),
        _blank_digit(1, 1),
    ]
    first = report_to_csv(classify(digits, pattern_masks, config=DET))
    second = report_to_csv(classify(digits, pattern_masks, config=DET))
    assert first == second
    lines = first.strip().split("\n")
    assert lines[0] == CSV_HEADER == "index,label,s0,s1,s2,s3,s4,s5,s6,s7,s8,s9,best,rejected"
    ok = lines[1].split(",")
    assert ok[0] == "0" and ok[1] == "7"
    assert float(ok[2 + 7]) == 0.0
    assert ok[12] == "7" and ok[13] == "false"
    failed = lines[2].split(",")
    assert failed[0] == "1" and failed[1] == "1"
    assert failed[2:12] == [""] * 10
    assert failed[12] == "" and failed[13] == "true"


def test_csv_scores_round_trip_through_repr(pattern_masks):
    digits = [_digit_from_mask(pattern_masks[4], 0, 4)]
    report = classify(digits, pattern_masks, config=DET)
    line = report_to_csv(report).strip().split("\n")[1]
    parsed = [float(x) for x in line.split(",")[2:12]]
    assert tuple(parsed) == report.rows[0].scores
