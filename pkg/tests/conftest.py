"""Shared fixtures: the t10k digit corpus and pattern set.

Real t10k IDX files are used when present (searched in $MNIST_DIR, ./data and
tests/data). Otherwise a stand-in corpus of the same shape is synthesized
from sklearn's bundled handwritten digits (1797 genuine 8x8 scans, upscaled
to 28x28 and tiled to 10000 exemplars) and written in genuine IDX format, so
every byte-level code path is exercised either way.
"""

from __future__ import annotations

import os
from pathlib import Path

import numpy as np
import pytest

from curvematch import (
    BinaryMask,
    GrayImage,
    load_labeled_digits,
    load_pattern,
    write_idx_images,
    write_idx_labels,
)

_REAL_NAMES = (
    ("t10k-images-idx3-ubyte", "t10k-labels-idx1-ubyte"),
    ("t10k-images.idx3-ubyte", "t10k-labels.idx1-ubyte"),
)

CORPUS_SIZE = 10000


def _find_real_corpus() -> tuple[Path, Path] | None:
    roots = [os.environ.get("MNIST_DIR"), Path.cwd() / "data", Path(__file__).parent / "data"]
    for root in roots:
        if root is None:
            continue
        root = Path(root)
        for images, labels in _REAL_NAMES:
            if (root / images).is_file() and (root / labels).is_file():
                return root / images, root / labels
    return None


def _synthesize_corpus(out_dir: Path) -> tuple[Path, Path]:
    from sklearn.datasets import load_digits

    raw = load_digits()
    images = []
    labels = []
    for k in range(CORPUS_SIZE):
        src = raw.images[k % len(raw.images)]
        big = np.kron(src, np.ones((3, 3)))
        canvas = np.zeros((28, 28))
        canvas[2:26, 2:26] = big
        pixels = np.clip(np.rint(canvas * 15.9375), 0, 255).astype(np.uint8)
        images.append(GrayImage(pixels=pixels))
        labels.append(int(raw.target[k % len(raw.images)]))

    images_path = out_dir / "t10k-images-idx3-ubyte"
    labels_path = out_dir / "t10k-labels-idx1-ubyte"
    images_path.write_bytes(write_idx_images(images))
    labels_path.write_bytes(write_idx_labels(labels))
    return images_path, labels_path


@pytest.fixture(scope="session")
def corpus_paths(tmp_path_factory: pytest.TempPathFactory) -> tuple[Path, Path]:
    real = _find_real_corpus()
    if real is not None:
        return real
    return _synthesize_corpus(tmp_path_factory.mktemp("corpus"))


@pytest.fixture(scope="session")
def corpus(corpus_paths):
    images_path, labels_path = corpus_paths
    return load_labeled_digits(images_path, labels_path)


@pytest.fixture(scope="session")
def pattern_masks() -> list[BinaryMask]:
    root = Path(__file__).parent.parent / "src" / "curvematch" / "patterns"
    return [load_pattern((root / f"{k}.txt").read_text()) for k in range(10)]
