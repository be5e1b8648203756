"""Run-length image representation.

A binary image is stored as one list of half-open black runs ``[start, end)``
per row.  Row 0 is the bottom row.  All rows are packed into a single
``(n, 2)`` array of 16-bit coordinates plus an offsets array, so line ``y``
owns ``runs[offsets[y]:offsets[y + 1]]``.

Canonical form: within a row, runs are non-empty, strictly ascending and
never touch (``end < next start``), and lie inside ``[0, width)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .bitblit import WORD_BITS, PackedBitmap

MAX_COORD = 65535
COORD_DTYPE = np.uint16

Run = tuple[int, int]


def round_half_away(value: float | Fraction) -> int:
    """Round to nearest integer, ties away from zero."""
    if value >= 0:
        return int(math.floor(value + Fraction(1, 2) if isinstance(value, Fraction) else value + 0.5))
    return -round_half_away(-value)


def _check_dims(width: int, height: int) -> None:
    if not (1 <= width <= MAX_COORD and 1 <= height <= MAX_COORD):
        raise ValueError(f"image dimensions {width}x{height} outside 1..{MAX_COORD}")


@dataclass(frozen=True, eq=False)
class RleImage:
    width: int
    height: int
    runs: np.ndarray      # (n, 2) uint16, [start, end) per run
    offsets: np.ndarray   # (height + 1,) int64

    def __post_init__(self):
        object.__setattr__(self, "width", int(self.width))
        object.__setattr__(self, "height", int(self.height))

    @classmethod
    def from_lines(cls, width: int, height: int, lines: Sequence[Iterable[Run]]) -> "RleImage":
        """Build an image from per-row run lists (not normalized; see `validate`)."""
        _check_dims(width, height)
        if len(lines) != height:
            raise ValueError(f"expected {height} lines, got {len(lines)}")
        counts = np.zeros(height + 1, dtype=np.int64)
        flat: list[int] = []
        for y, line in enumerate(lines):
            n = 0
            for s, e in line:
                if not (0 <= s <= MAX_COORD and 0 <= e <= MAX_COORD):
                    raise ValueError(f"run ({s}, {e}) on line {y} not representable in 16 bits")
                flat.append(s)
                flat.append(e)
                n += 1
            counts[y + 1] = n
        runs = np.asarray(flat, dtype=COORD_DTYPE).reshape(-1, 2)
        return cls(width, height, runs, np.cumsum(counts))

    @classmethod
    def empty(cls, width: int, height: int) -> "RleImage":
        _check_dims(width, height)
        return cls(width, height, np.zeros((0, 2), COORD_DTYPE), np.zeros(height + 1, np.int64))

    @classmethod
    def full(cls, width: int, height: int) -> "RleImage":
        _check_dims(width, height)
        runs = np.zeros((height, 2), COORD_DTYPE)
        runs[:, 1] = width
        return cls(width, height, runs, np.arange(height + 1, dtype=np.int64))

    @classmethod
    def from_array(cls, pixels: np.ndarray) -> "RleImage":
        """From a boolean array indexed ``[y, x]`` with row 0 at the bottom."""
        pixels = np.asarray(pixels, dtype=bool)
        height, width = pixels.shape
        _check_dims(width, height)
        padded = np.zeros((height, width + 2), dtype=np.int8)
        padded[:, 1:-1] = pixels
        ys, xs = np.nonzero(np.diff(padded, axis=1))
        # transitions alternate rise/fall within each row
        starts, ends = xs[0::2], xs[1::2]
        counts = np.bincount(ys[0::2], minlength=height)
        offsets = np.zeros(height + 1, np.int64)
        np.cumsum(counts, out=offsets[1:])
        runs = np.stack([starts, ends], axis=1).astype(COORD_DTYPE)
        return cls(width, height, runs, offsets)

    def to_array(self) -> np.ndarray:
        stride = self.width + 1
        base = self.line_ids() * stride
        size = self.height * stride
        marks = np.bincount(base + self.runs[:, 0], minlength=size)[:size].astype(np.int8)
        marks -= np.bincount(base + self.runs[:, 1], minlength=size)[:size].astype(np.int8)
        return np.cumsum(marks.reshape(self.height, stride), axis=1)[:, :-1] > 0

    @property
    def nruns(self) -> int:
        return int(self.runs.shape[0])

    def line(self, y: int) -> list[Run]:
        seg = self.runs[self.offsets[y]:self.offsets[y + 1]]
        return [(int(s), int(e)) for s, e in seg.tolist()]

    @property
    def lines(self) -> list[list[Run]]:
        flat = self.runs.tolist()
        off = self.offsets.tolist()
        return [[tuple(r) for r in flat[off[y]:off[y + 1]]] for y in range(self.height)]

    def line_ids(self) -> np.ndarray:
        """Row index of every run."""
        return np.repeat(np.arange(self.height, dtype=np.int64), np.diff(self.offsets))

    def runs_per_line(self) -> np.ndarray:
        return np.diff(self.offsets)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RleImage):
            return NotImplemented
        return (self.width == other.width and self.height == other.height
                and np.array_equal(self.offsets, other.offsets)
                and np.array_equal(self.runs, other.runs))

    def __repr__(self) -> str:
        return f"RleImage({self.width}x{self.height}, {self.nruns} runs)"


# -- flat coordinates ------------------------------------------------------
# Row y, column x maps to y * stride + x with stride = width + 1, so runs of
# different rows never touch and a whole image behaves like one long line.

def flat_runs(image: RleImage, stride: int | None = None) -> tuple[np.ndarray, np.ndarray, int]:
    stride = image.width + 1 if stride is None else stride
    base = image.line_ids() * stride
    return base + image.runs[:, 0], base + image.runs[:, 1], stride


def from_flat(width: int, height: int, fs: np.ndarray, fe: np.ndarray, stride: int) -> RleImage:
    """Inverse of `flat_runs`; input must be sorted and canonical."""
    ys = fs // stride
    base = ys * stride
    runs = np.empty((fs.shape[0], 2), COORD_DTYPE)
    runs[:, 0] = fs - base
    runs[:, 1] = fe - base
    offsets = np.zeros(height + 1, np.int64)
    np.cumsum(np.bincount(ys, minlength=height), out=offsets[1:])
    return RleImage(width, height, runs, offsets)


def merge_flat(fs: np.ndarray, fe: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Union of intervals sorted by start; touching intervals are joined."""
    if fs.shape[0] == 0:
        return fs, fe
    reach = np.maximum.accumulate(fe)
    new = np.empty(fs.shape[0], dtype=bool)
    new[0] = True
    new[1:] = fs[1:] > reach[:-1]
    first = np.flatnonzero(new)
    last = np.r_[first[1:] - 1, fs.shape[0] - 1]
    return fs[first], reach[last]


# -- validation -------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    line: int
    run: int
    reason: str

    def __str__(self) -> str:
        return f"line {self.line}, run {self.run}: {self.reason}"


def validate(image: RleImage) -> Violation | None:
    """Return None if `image` is canonical, else the first offending run."""
    if len(image.offsets) != image.height + 1:
        return Violation(0, 0, "offsets length does not match height")
    if np.any(np.diff(image.offsets) < 0) or image.offsets[0] != 0 or image.offsets[-1] != image.nruns:
        return Violation(0, 0, "offsets not monotone over the run array")
    if image.nruns == 0:
        return None
    s = image.runs[:, 0].astype(np.int64)
    e = image.runs[:, 1].astype(np.int64)
    ys = image.line_ids()
    first_in_line = np.ones(image.nruns, dtype=bool)
    first_in_line[1:] = ys[1:] != ys[:-1]
    bad_empty = s >= e
    bad_width = e > image.width
    bad_gap = np.zeros(image.nruns, dtype=bool)
    bad_gap[1:] = (~first_in_line[1:]) & (s[1:] <= e[:-1])
    bad = bad_empty | bad_width | bad_gap
    if not bad.any():
        return None
    i = int(np.argmax(bad))
    y = int(ys[i])
    j = i - int(image.offsets[y])
    if bad_empty[i]:
        reason = f"empty run ({s[i]}, {e[i]})"
    elif bad_width[i]:
        reason = f"run ({s[i]}, {e[i]}) extends past width {image.width}"
    else:
        reason = f"run ({s[i]}, {e[i]}) touches or overlaps previous run ending at {e[i - 1]}"
    return Violation(y, j, reason)


def check(image: RleImage) -> RleImage:
    v = validate(image)
    if v is not None:
        raise ValueError(f"non-canonical run-length image: {v}")
    return image


# -- basic operations --------------------------------------------------------

def complement(image: RleImage) -> RleImage:
    """Pixel-wise negation inside the image rectangle."""
    fs, fe, stride = flat_runs(image)
    rows = np.arange(image.height, dtype=np.int64) * stride
    # gaps: from each line start / run end to the next run start / line end
    bounds_lo = np.concatenate([rows, fe])
    bounds_hi = np.concatenate([fs, rows + image.width])
    lo = np.sort(bounds_lo, kind="stable")
    hi = np.sort(bounds_hi, kind="stable")
    keep = hi > lo
    return from_flat(image.width, image.height, lo[keep], hi[keep], stride)


def pixel_count(image: RleImage) -> int:
    return int(np.sum(image.runs[:, 1].astype(np.int64) - image.runs[:, 0]))


def storage_bytes(image: RleImage) -> int:
    """Bytes used by the runs: two 16-bit integers per run."""
    return 4 * image.nruns


def from_bitmap(bitmap: PackedBitmap) -> RleImage:
    _check_dims(bitmap.width, bitmap.height)
    return RleImage.from_array(bitmap.to_array())


def to_bitmap(image: RleImage) -> PackedBitmap:
    return PackedBitmap.from_array(image.to_array())


# -- canvas helpers -----------------------------------------------------------

def pad(image: RleImage, left: int, bottom: int, right: int, top: int) -> RleImage:
    """Grow the canvas with white borders."""
    width = image.width + left + right
    height = image.height + bottom + top
    _check_dims(width, height)
    runs = image.runs.copy()
    runs += left
    offsets = np.concatenate([np.zeros(bottom, np.int64), image.offsets,
                              np.full(top, image.offsets[-1], np.int64)])
    return RleImage(width, height, runs, offsets)


def crop(image: RleImage, x0: int, y0: int, width: int, height: int) -> RleImage:
    """Sub-rectangle ``[x0, x0+width) x [y0, y0+height)``; outside reads are white."""
    _check_dims(width, height)
    ys = image.line_ids()
    s = image.runs[:, 0].astype(np.int64) - x0
    e = image.runs[:, 1].astype(np.int64) - x0
    s = np.maximum(s, 0)
    e = np.minimum(e, width)
    ny = ys - y0
    keep = (e > s) & (ny >= 0) & (ny < height)
    stride = width + 1
    return from_flat(width, height, ny[keep] * stride + s[keep], ny[keep] * stride + e[keep], stride)


def shift(image: RleImage, dx: int, dy: int) -> RleImage:
    """Translate content by (dx, dy) on the same canvas, clipping at the borders."""
    ys = image.line_ids() + dy
    s = np.maximum(image.runs[:, 0].astype(np.int64) + dx, 0)
    e = np.minimum(image.runs[:, 1].astype(np.int64) + dx, image.width)
    keep = (e > s) & (ys >= 0) & (ys < image.height)
    stride = image.width + 1
    return from_flat(image.width, image.height, ys[keep] * stride + s[keep],
                     ys[keep] * stride + e[keep], stride)


def row_words(width: int) -> int:
    return -(-width // WORD_BITS)
