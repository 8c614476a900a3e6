"""Readers for the binary IDX digit files and plain-text pattern grids.

IDX layout (big-endian):
  images  [0,0,8,3][count:u32][rows:u32][cols:u32][count*rows*cols pixel bytes]
  labels  [0,0,8,1][count:u32][count label bytes]

Pattern files are rectangular grids of '.' (outside) and '#' (inside).
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import IdxFormatError, PatternError

IMAGES_MAGIC = 0x00000803
LABELS_MAGIC = 0x00000801

GRAY_LIMIT = 80


@dataclass(frozen=True)
class GrayImage:
    """A raster of gray values 0..255, `pixels[h, w]`."""

    pixels: np.ndarray

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]


@dataclass(frozen=True)
class BinaryMask:
    """Boolean lattice, `inside[h, w]` true where the point belongs to the digit."""

    inside: np.ndarray

    @property
    def width(self) -> int:
        return self.inside.shape[1]

    @property
    def height(self) -> int:
        return self.inside.shape[0]


@dataclass(frozen=True)
class LabeledDigit:
    image: GrayImage
    label: int
    index: int


def parse_idx_images(data: bytes) -> list[GrayImage]:
    """Parse an IDX image file into a list of GrayImage, in file order."""
    if len(data) < 16:
        raise IdxFormatError(f"image file too short for header: {len(data)} bytes")
    magic, count, rows, cols = struct.unpack(">IIII", data[:16])
    if magic != IMAGES_MAGIC:
        raise IdxFormatError(f"bad image magic 0x{magic:08x}, expected 0x{IMAGES_MAGIC:08x}")
    expected = 16 + count * rows * cols
    if len(data) != expected:
        raise IdxFormatError(f"image payload is {len(data) - 16} bytes, expected {count * rows * cols}")
    raw = np.frombuffer(data, dtype=np.uint8, offset=16)
    arr = raw.reshape(count, rows, cols)
    return [GrayImage(pixels=arr[i].copy()) for i in range(count)]


def parse_idx_labels(data: bytes) -> list[int]:
    """Parse an IDX label file into a list of digits 0..9, in file order."""
    if len(data) < 8:
        raise IdxFormatError(f"label file too short for header: {len(data)} bytes")
    magic, count = struct.unpack(">II", data[:8])
    if magic != LABELS_MAGIC:
        raise IdxFormatError(f"bad label magic 0x{magic:08x}, expected 0x{LABELS_MAGIC:08x}")
    if len(data) != 8 + count:
        raise IdxFormatError(f"label payload is {len(data) - 8} bytes, expected {count}")
    labels = list(data[8:])
    bad = [v for v in labels if v > 9]
    if bad:
        raise IdxFormatError(f"labels out of range 0..9: {bad[:5]}")
    return labels


def write_idx_images(images: list[GrayImage]) -> bytes:
    """Serialize images back to IDX bytes (inverse of parse_idx_images)."""
    if not images:
        return struct.pack(">IIII", IMAGES_MAGIC, 0, 0, 0)
    rows, cols = images[0].pixels.shape
    for img in images:
        if img.pixels.shape != (rows, cols):
            raise ValueError("all images in one IDX file must share dimensions")
    header = struct.pack(">IIII", IMAGES_MAGIC, len(images), rows, cols)
    return header + b"".join(img.pixels.astype(np.uint8).tobytes() for img in images)


def write_idx_labels(labels: list[int]) -> bytes:
    """Serialize labels back to IDX bytes (inverse of parse_idx_labels)."""
    if any(not 0 <= v <= 9 for v in labels):
        raise ValueError("labels must be in 0..9")
    return struct.pack(">II", LABELS_MAGIC, len(labels)) + bytes(labels)


def load_labeled_digits(image_path: str | Path, label_path: str | Path) -> list[LabeledDigit]:
    """Read and zip an IDX image/label file pair."""
    images = parse_idx_images(Path(image_path).read_bytes())
    labels = parse_idx_labels(Path(label_path).read_bytes())
    if len(images) != len(labels):
        raise IdxFormatError(f"{len(images)} images but {len(labels)} labels")
    return [LabeledDigit(image=img, label=lab, index=i) for i, (img, lab) in enumerate(zip(images, labels))]


def threshold(image: GrayImage, limit: int = GRAY_LIMIT, include_equal: bool = False) -> BinaryMask:
    """Binarize a gray image.

    A point belongs to the digit iff its value exceeds `limit` (default 80).
    Whether the boundary value itself counts is a convention;
    `include_equal=True` switches to the >= reading.
    """
    if include_equal:
        inside = image.pixels >= limit
    else:
        inside = image.pixels > limit
    return BinaryMask(inside=inside)


def load_pattern(text: str) -> BinaryMask:
    """Parse a '.'/'#' grid into a BinaryMask.

    Rows must be non-empty, equal length, and use only '.' and '#'.
    """
    lines = [line.rstrip("\r") for line in text.split("\n")]
    while lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise PatternError("pattern file is empty")
    width = len(lines[0])
    if width == 0:
        raise PatternError("pattern rows are empty")
    inside = np.zeros((len(lines), width), dtype=bool)
    for h, line in enumerate(lines):
        if len(line) != width:
            raise PatternError(f"row {h} has length {len(line)}, expected {width}")
        for w, ch in enumerate(line):
            if ch == "#":
                inside[h, w] = True
            elif ch != ".":
                raise PatternError(f"bad character {ch!r} at row {h}, column {w}")
    return BinaryMask(inside=inside)


def load_pattern_file(path: str | Path) -> BinaryMask:
    return load_pattern(Path(path).read_text(encoding="utf-8"))
