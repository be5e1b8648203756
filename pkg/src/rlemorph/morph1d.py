"""Horizontal (within-line) morphology by a segment of length u.

Erosion keeps runs at least `u` wide and shrinks them by ``origin`` on the
left and ``u - 1 - origin`` on the right; dilation grows them by the same
amounts on the opposite sides, then merges runs that meet.  With the
default origin ``u // 2`` this pair is adjoint, so opening and closing are
proper idempotent filters.
"""
from __future__ import annotations

import numpy as np

from .rle import RleImage, flat_runs, from_flat, merge_flat


def _check_u(u: int) -> None:
    if u < 1:
        raise ValueError(f"segment length must be >= 1, got {u}")


def within_line_erode_dilate(image: RleImage, u: int, kind: str, origin: int | None = None) -> RleImage:
    """Erode or dilate every row by a horizontal segment.

    `origin` may lie outside ``[0, u)``; this is how runs of an arbitrary
    structuring element are applied at their own horizontal offsets.
    """
    _check_u(u)
    o = u // 2 if origin is None else origin
    if u == 1 and o == 0:
        return image
    fs, fe, stride = flat_runs(image)
    line_lo = fs - image.runs[:, 0]
    line_hi = line_lo + image.width
    if kind == "erode":
        keep = (fe - fs) >= u
        s = np.maximum(fs[keep] + o, line_lo[keep])
        e = np.minimum(fe[keep] - (u - 1 - o), line_hi[keep])
        nonempty = e > s
        return from_flat(image.width, image.height, s[nonempty], e[nonempty], stride)
    if kind == "dilate":
        s = np.clip(fs - o, line_lo, line_hi)
        e = np.clip(fe + (u - 1 - o), line_lo, line_hi)
        nonempty = e > s
        s, e = merge_flat(s[nonempty], e[nonempty])
        return from_flat(image.width, image.height, s, e, stride)
    raise ValueError(f"unknown kind {kind!r}")


def within_line_open_close(image: RleImage, u: int, kind: str) -> RleImage:
    """Opening deletes runs narrower than `u`; closing fills interior gaps narrower than `u`."""
    _check_u(u)
    if u == 1:
        return image
    fs, fe, stride = flat_runs(image)
    if kind == "open":
        keep = (fe - fs) >= u
        return from_flat(image.width, image.height, fs[keep], fe[keep], stride)
    if kind == "close":
        if fs.shape[0] == 0:
            return image
        ys = image.line_ids()
        # gap before run i (i > 0) is fillable when it is in the same row and narrow
        fill = np.zeros(fs.shape[0], dtype=bool)
        fill[1:] = (ys[1:] == ys[:-1]) & ((fs[1:] - fe[:-1]) < u)
        first = np.flatnonzero(~fill)
        last = np.r_[first[1:] - 1, fs.shape[0] - 1]
        return from_flat(image.width, image.height, fs[first], fe[last], stride)
    raise ValueError(f"unknown kind {kind!r}")
