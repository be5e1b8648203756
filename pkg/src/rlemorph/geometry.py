"""Scaling, skewing and shear-based rotation of run-length images.

All of these only touch run endpoints: a horizontal shear moves every run of
a line by the same amount, and vertical shears go through `transpose`.
"""
from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from . import rle
from .rle import MAX_COORD, RleImage, from_flat, merge_flat, round_half_away
from .transpose import transpose


def as_fraction(value: int | float | str | Fraction) -> Fraction:
    """Exact rational from an int, float, Fraction or a string like ``"3/2"``."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


def _round_frac(num: np.ndarray, den: int) -> np.ndarray:
    """Half-away rounding of ``num / den`` for non-negative integer `num`."""
    return (2 * num + den) // (2 * den)


def shear_rows(image: RleImage, shifts: np.ndarray, new_width: int) -> RleImage:
    """Move every run of line ``y`` right by ``shifts[y]`` on a canvas `new_width` wide.

    Raises if a run would leave the canvas: shears here never clip.
    """
    shifts = np.asarray(shifts, dtype=np.int64)
    if shifts.shape != (image.height,):
        raise ValueError("need one shift per line")
    if new_width > MAX_COORD:
        raise OverflowError(f"sheared width {new_width} exceeds {MAX_COORD}")
    d = shifts[image.line_ids()]
    s = image.runs[:, 0].astype(np.int64) + d
    e = image.runs[:, 1].astype(np.int64) + d
    if s.size and (s.min() < 0 or e.max() > new_width):
        raise OverflowError("shear moves runs outside the canvas")
    stride = new_width + 1
    base = image.line_ids() * stride
    return from_flat(new_width, image.height, base + s, base + e, stride)


def scale(image: RleImage, fx, fy) -> RleImage:
    """Rescale run coordinates by `fx` and duplicate/drop lines by `fy`."""
    fx, fy = as_fraction(fx), as_fraction(fy)
    if fx <= 0 or fy <= 0:
        raise ValueError("scale factors must be positive")
    width = round_half_away(image.width * fx)
    height = round_half_away(image.height * fy)
    if width > MAX_COORD or height > MAX_COORD:
        raise OverflowError(f"scaled size {width}x{height} exceeds {MAX_COORD}")
    if width < 1 or height < 1:
        raise ValueError("scaled image is empty")
    s = _round_frac(image.runs[:, 0].astype(np.int64) * fx.numerator, fx.denominator)
    e = _round_frac(image.runs[:, 1].astype(np.int64) * fx.numerator, fx.denominator)
    e = np.minimum(e, width)
    keep = e > s
    ys = image.line_ids()[keep]
    s, e = s[keep], e[keep]
    # output line y' reads input line floor(y' / fy)
    src = (np.arange(height, dtype=np.int64) * fy.denominator) // fy.numerator
    src = np.minimum(src, image.height - 1)
    starts = np.searchsorted(ys, src, side="left")
    ends = np.searchsorted(ys, src, side="right")
    counts = ends - starts
    idx = np.repeat(starts - np.r_[0, np.cumsum(counts)[:-1]], counts) + np.arange(int(counts.sum()))
    out_y = np.repeat(np.arange(height, dtype=np.int64), counts)
    stride = width + 1
    fs, fe = merge_flat(out_y * stride + s[idx], out_y * stride + e[idx])
    return from_flat(width, height, fs, fe, stride)


def skew_h(image: RleImage, slope) -> RleImage:
    """Shift line ``y`` right by ``round(slope * y)``; the canvas grows by ``ceil(|slope| * height)``.

    For negative slopes everything is offset by ``-round(slope * (height - 1))``
    so the leftmost shifted line starts at zero.
    """
    slope = as_fraction(slope)
    ys = np.arange(image.height)
    shifts = np.array([round_half_away(slope * int(y)) for y in ys], dtype=np.int64)
    if slope < 0:
        shifts -= shifts[-1]
    grow = math.ceil(abs(slope) * image.height)
    return shear_rows(image, shifts, image.width + grow)


def skew_offset(height: int, slope) -> int:
    """Horizontal offset `skew_h` adds to every line (non-zero only for negative slopes)."""
    slope = as_fraction(slope)
    return -round_half_away(slope * (height - 1)) if slope < 0 else 0


def center_crop(image: RleImage, width: int, height: int) -> RleImage:
    """Centred ``width x height`` window (the canvas centre stays the centre)."""
    x0 = (image.width - width) // 2
    y0 = (image.height - height) // 2
    return rle.crop(image, x0, y0, width, height)


def _center_shear(image: RleImage, factor: float) -> RleImage:
    """Shear about the canvas centre: line ``y`` moves by ``round(factor * (y + 1/2 - h/2))``."""
    c = image.height / 2
    shifts = np.array([round_half_away(factor * (y + 0.5 - c)) for y in range(image.height)],
                      dtype=np.int64)
    return shear_rows(image, shifts, image.width)


def rotate(image: RleImage, angle: float) -> RleImage:
    """Counter-clockwise rotation (row 0 at the bottom) by three shears.

    The result is a square canvas, centred on the input centre, large enough
    that no pixel is clipped.
    """
    if abs(angle) > math.pi / 4 + 1e-12:
        raise ValueError("rotate handles |angle| <= pi/4; compose with transposes for more")
    if angle == 0:
        return image
    t = math.tan(angle / 2)
    sn = math.sin(angle)
    diag = math.hypot(image.width, image.height)
    out_side = math.ceil(diag) + 4
    # intermediate shears can reach (1 + |tan(angle/2)|) times the radius
    side = math.ceil(diag * (1 + abs(t))) + 6
    # matching parities keep the input centre on the canvas centre (exactly
    # along x; along y too unless width and height differ in parity)
    side += (side - image.width) % 2
    out_side += (side - out_side) % 2
    canvas = _centered_pad(image, side)
    a = _center_shear(canvas, -t)
    b = transpose(_center_shear(transpose(a), sn))
    c = _center_shear(b, -t)
    return center_crop(c, out_side, out_side)


def _centered_pad(image: RleImage, side: int) -> RleImage:
    left = (side - image.width) // 2
    bottom = (side - image.height) // 2
    return rle.pad(image, left, bottom, side - image.width - left, side - image.height - bottom)
