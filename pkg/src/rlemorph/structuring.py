"""Structuring elements stored as run-length masks with an origin."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .rle import RleImage, round_half_away


@dataclass(frozen=True)
class StructuringElement:
    mask: RleImage
    origin: tuple[int, int]
    kind: str = "arbitrary"

    def __post_init__(self):
        cx, cy = self.origin
        if not (0 <= cx < self.mask.width and 0 <= cy < self.mask.height):
            raise ValueError(f"origin {self.origin} outside {self.mask.width}x{self.mask.height} mask")
        if self.mask.nruns == 0:
            raise ValueError("empty structuring element")

    def offsets(self) -> list[tuple[int, int]]:
        """Set pixels relative to the origin."""
        cx, cy = self.origin
        out = []
        for j, line in enumerate(self.mask.lines):
            for s, e in line:
                out.extend((i - cx, j - cy) for i in range(s, e))
        return out

    def row_runs(self) -> list[tuple[int, int, int]]:
        """``(dy, x0, length)`` per mask run, relative to the origin."""
        cx, cy = self.origin
        return [(j - cy, s - cx, e - s)
                for j, line in enumerate(self.mask.lines) for s, e in line]

    @property
    def max_run_width(self) -> int:
        return int(np.max(self.mask.runs[:, 1].astype(np.int64) - self.mask.runs[:, 0]))

    def to_array(self) -> np.ndarray:
        return self.mask.to_array()

    def reflected(self) -> "StructuringElement":
        """Point reflection through the origin."""
        w, h = self.mask.width, self.mask.height
        cx, cy = self.origin
        arr = self.mask.to_array()[::-1, ::-1]
        return StructuringElement(RleImage.from_array(arr), (w - 1 - cx, h - 1 - cy), self.kind)

    @classmethod
    def from_array(cls, pixels: np.ndarray, origin: tuple[int, int],
                   kind: str = "arbitrary") -> "StructuringElement":
        return cls(RleImage.from_array(pixels), origin, kind)

    @classmethod
    def from_offsets(cls, offsets, kind: str = "arbitrary") -> "StructuringElement":
        pts = list(offsets)
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        x0, y0 = min(xs), min(ys)
        arr = np.zeros((max(ys) - y0 + 1, max(xs) - x0 + 1), dtype=bool)
        for x, y in pts:
            arr[y - y0, x - x0] = True
        return cls.from_array(arr, (-x0, -y0), kind)


def make_rect_se(u: int, v: int) -> StructuringElement:
    if u < 1 or v < 1:
        raise ValueError("rectangle sides must be >= 1")
    return StructuringElement(RleImage.full(u, v), (u // 2, v // 2), "rect")


def make_circle_se(r: int) -> StructuringElement:
    """Digital disk ``x^2 + y^2 <= r^2``, one run per row, origin at the centre."""
    if r < 1:
        raise ValueError("radius must be >= 1")
    lines = []
    for y in range(-r, r + 1):
        h = math.isqrt(r * r - y * y)
        lines.append([(r - h, r + h + 1)])
    return StructuringElement(RleImage.from_lines(2 * r + 1, 2 * r + 1, lines), (r, r), "circle")


def corrected_line_length(r: int, angle: float) -> int:
    """Horizontal length used for a line of half-length `r` at `angle` after skewing."""
    return max(1, round_half_away(2 * r * math.cos(angle)))


def skew_line_se(r: int, angle: float) -> StructuringElement:
    """Digital line obtained by un-skewing a horizontal segment.

    The skew maps ``(x, y) -> (x, y - round(tan(angle) * x))``; the segment of
    `corrected_line_length` pixels with origin at its ``length // 2`` pixel is
    pulled back through that map at phase ``x = 0``.
    """
    t = math.tan(angle)
    n = corrected_line_length(r, angle)
    o = n // 2
    return StructuringElement.from_offsets(
        [(d, round_half_away(t * d)) for d in range(-o, n - o)], "line")
