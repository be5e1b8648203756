"""Morphology with arbitrary structuring elements, and with angled lines.

An SE is handled one horizontal run at a time.  Erosion reads
``image(p + b)`` and dilation reads ``image(p - b)`` for every SE offset
``b``, matching `brute_force_morph`.
"""
from __future__ import annotations

import math

import numpy as np

from . import bitblit, rle
from .bitblit import BlitCounter, BoolOp, PackedBitmap, blit_shift, shifted
from .lineops import image_bool
from .morph1d import within_line_erode_dilate
from .rle import RleImage, round_half_away
from .structuring import StructuringElement, corrected_line_length
from .transpose import transpose
from .geometry import shear_rows


def _check(se: StructuringElement, kind: str) -> None:
    if se.mask.nruns == 0:
        raise ValueError("empty structuring element")
    if kind not in ("erode", "dilate"):
        raise ValueError(f"unknown kind {kind!r}")


def arb_morph_rle(image: RleImage, se: StructuringElement, kind: str,
                  counter: BlitCounter | None = None) -> RleImage:
    """Run-at-a-time morphology on run-length images.

    Each SE run ``(dy, x0, n)`` is a horizontal segment: the image is
    eroded/dilated by it within lines (with the run's own horizontal
    origin) and the result is combined into the accumulator at vertical
    offset `dy`.  Rows with identical runs share the within-line pass.
    """
    _check(se, kind)
    erode = kind == "erode"
    op = BoolOp.AND if erode else BoolOp.OR
    cache: dict[tuple[int, int], RleImage] = {}
    acc: RleImage | None = None
    for dy, x0, n in se.row_runs():
        key = (x0, n)
        if key not in cache:
            cache[key] = within_line_erode_dilate(image, n, kind, origin=-x0)
        part = cache[key]
        ddy = -dy if erode else dy
        if acc is None:
            acc = rle.shift(part, 0, ddy) if ddy else part
            if counter is not None:
                counter.record("copy", 0, ddy)
        else:
            acc = image_bool(acc, part, 0, ddy, op, counter)
    return acc


def arb_morph_bitblit_doubling(image: PackedBitmap, se: StructuringElement, kind: str,
                               counter: BlitCounter | None = None) -> PackedBitmap:
    """Packed-bitmap morphology with a doubling horizontal working image.

    ``work`` holds the image combined over the window ``[0, w)`` to the right
    of each pixel; `w` doubles until it reaches the widest SE run.  A run of
    length ``n`` with ``w <= n < 2w`` is then two shifted blits of ``work``
    (one if ``n == w``).  The first blit into the accumulator is a copy.
    """
    _check(se, kind)
    erode = kind == "erode"
    op = BoolOp.AND if erode else BoolOp.OR
    runs = sorted(se.row_runs(), key=lambda r: r[2])
    maxw = runs[-1][2]
    src = image
    m = 0
    if not erode:
        # OR windows need their off-canvas values on the left; see window_pass
        m = maxw - 1
        src = bitblit.pad(image, m, 0, 0, 0)
    work = src
    w = 1
    acc: PackedBitmap | None = None
    for dy, x0, n in runs:
        while 2 * w <= n:
            if work is src:
                work = src.copy()
            blit_shift(work, work, -w, 0, op, counter)
            w *= 2
        if erode:
            # out(p) &= work(p + (x0 + k, dy)) for k in {0, n - w}
            moves = [(-x0, -dy), (-(x0 + n - w), -dy)]
        else:
            # out(p) |= work(p - (x0 + n - 1, dy)) and work(p - (x0 + w - 1, dy))
            moves = [(x0 + n - 1, dy), (x0 + w - 1, dy)]
        if n == w:
            moves = moves[:1]
        for dx, ddy in moves:
            if acc is None:
                acc = shifted(work, dx, ddy)
                if counter is not None:
                    counter.record("copy", dx, ddy)
            else:
                blit_shift(acc, work, dx, ddy, op, counter)
    if m:
        acc = bitblit.crop(acc, m, 0, image.width, image.height)
    return acc


def morph_se(image, se: StructuringElement, kind: str, engine: str = "rle"):
    """Any of erode/dilate/open/close with an arbitrary SE.

    `engine` is ``rle`` (input `RleImage`), ``bitblit`` (doubling) or
    ``brute`` (both on `PackedBitmap`).  Closing runs on a canvas padded by
    the mask size.
    """
    if engine == "rle":
        base, pad, crop = arb_morph_rle, rle.pad, rle.crop
    elif engine == "bitblit":
        base, pad, crop = arb_morph_bitblit_doubling, bitblit.pad, bitblit.crop
    elif engine == "brute":
        return bitblit.brute_force_morph(image, se, kind)
    else:
        raise ValueError(f"unknown engine {engine!r}")
    if kind in ("erode", "dilate"):
        return base(image, se, kind)
    if kind == "open":
        return base(base(image, se, "erode"), se, "dilate")
    if kind == "close":
        mw, mh = se.mask.width, se.mask.height
        big = pad(image, mw, mh, mw, mh)
        big = base(base(big, se, "dilate"), se, "erode")
        return crop(big, mw, mh, image.width, image.height)
    raise ValueError(f"unknown morphology kind {kind!r}")


# -- angled lines ---------------------------------------------------------

def _column_shifts(width: int, angle: float) -> tuple[np.ndarray, int]:
    """Per-column vertical shift ``-round(tan(angle) * x)`` made non-negative, and the growth."""
    t = math.tan(angle)
    d = np.array([-round_half_away(t * x) for x in range(width)], dtype=np.int64)
    lo = int(d.min())
    d -= lo
    return d, int(d.max())


def _skew_v_rle(image: RleImage, shifts: np.ndarray, new_height: int) -> RleImage:
    return transpose(shear_rows(transpose(image), shifts, new_height))


def _unskew_v_rle(image: RleImage, shifts: np.ndarray, height: int) -> RleImage:
    t = transpose(image)
    top = int(shifts.max())
    # move each column back down, then drop the extra rows
    back = shear_rows(t, top - shifts, t.width + top)
    return transpose(rle.crop(back, top, 0, height, t.height))


def line_angle_morph(image, r: int, angle: float, kind: str):
    """Erode or dilate by a digital line of half-length `r` at `angle` (radians).

    The image is skewed vertically so the line becomes horizontal, the
    horizontal segment of length ``round(2 r cos(angle))`` (origin at its
    ``length // 2`` pixel) is applied, and the skew is undone.  Works on
    `RleImage` and `PackedBitmap` alike and returns the same type.
    """
    if not (-math.pi / 4 - 1e-12 <= angle <= math.pi / 4 + 1e-12):
        raise ValueError("angle must lie in [-pi/4, pi/4]; flip or transpose for other octants")
    if r < 1:
        raise ValueError("r must be >= 1")
    if kind not in ("erode", "dilate"):
        raise ValueError(f"unknown kind {kind!r}")
    n = corrected_line_length(r, angle)
    o = n // 2
    shifts, grow = _column_shifts(image.width, angle)
    height = image.height + grow
    if isinstance(image, PackedBitmap):
        arr = image.to_array()
        ys, xs = np.nonzero(arr)
        big = np.zeros((height, image.width), dtype=bool)
        big[ys + shifts[xs], xs] = True
        lead = o if kind == "erode" else n - 1 - o
        op = BoolOp.AND if kind == "erode" else BoolOp.OR
        done = bitblit.window_pass(PackedBitmap.from_array(big), n, lead, 0, op).to_array()
        cols = np.arange(image.width)
        rows = np.arange(image.height)[:, None] + shifts[cols][None, :]
        return PackedBitmap.from_array(done[rows, cols[None, :]])
    skewed = _skew_v_rle(image, shifts, height)
    done = within_line_erode_dilate(skewed, n, kind, origin=o)
    return _unskew_v_rle(done, shifts, image.height)
