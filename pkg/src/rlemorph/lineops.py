"""Boolean operations between (shifted) run-length lines and images.

A line is viewed as an ascending stream of transitions: a rise at every run
start and a fall at every run end.  Combining two lines is an ordered merge
of two such streams; a sink turns the resulting stream of values back into
runs.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np

from .bitblit import BlitCounter, BoolOp
from .rle import Run, RleImage, complement, flat_runs, from_flat, merge_flat
from .rle import crop as crop_image, pad as pad_image, shift as shift_image

SENTINEL = 1 << 40  # larger than any coordinate, shifted or not


class TransitionSource:
    """Cursor over the transitions of one line, displaced by `offset`."""
    __slots__ = ("_runs", "_offset", "_i", "_n")

    def __init__(self, runs: Sequence[Run], offset: int = 0):
        self._runs = runs
        self._offset = offset
        self._i = 0
        self._n = 2 * len(runs)

    def __bool__(self) -> bool:
        return self._i < self._n

    def coord(self) -> int:
        if self._i >= self._n:
            return SENTINEL
        run = self._runs[self._i >> 1]
        return run[self._i & 1] + self._offset

    def value(self) -> bool:
        """Pixel value from this transition on."""
        return not (self._i & 1)

    def next(self) -> None:
        self._i += 1


class TransitionSink:
    """Re-assembles an ascending stream of ``(coord, value)`` into canonical runs.

    Values before the first transition are `initial`; output is clipped to
    ``[0, width)``.  Repeated values and zero-length runs collapse.
    """
    __slots__ = ("width", "runs", "_value", "_since")

    def __init__(self, width: int, initial: bool = False):
        self.width = width
        self.runs: list[Run] = []
        self._value = initial
        self._since = 0

    def append(self, where: int, value: bool) -> None:
        if value == self._value:
            return
        where = min(max(where, 0), self.width)
        if value:
            self._since = where
        else:
            self._emit(self._since, where)
        self._value = value

    def _emit(self, s: int, e: int) -> None:
        if e <= s:
            return
        if self.runs and self.runs[-1][1] >= s:
            self.runs[-1] = (self.runs[-1][0], max(e, self.runs[-1][1]))
        else:
            self.runs.append((s, e))

    def finish(self) -> list[Run]:
        if self._value:
            self._emit(self._since, self.width)
            self._value = False
        return self.runs


def line_bool(l1: Sequence[Run], l2: Sequence[Run], offset2: int, op: BoolOp, width: int) -> list[Run]:
    """``op(l1(x), l2(x - offset2))`` for ``0 <= x < width``."""
    table = {(a, b): op.bit(a, b) for a in (False, True) for b in (False, True)}
    sink = TransitionSink(width, table[False, False])
    src1 = TransitionSource(l1, 0)
    src2 = TransitionSource(l2, offset2)
    b1 = b2 = False
    while src1 or src2:
        if src1.coord() < src2.coord():
            b1 = src1.value()
            where = src1.coord()
            src1.next()
        else:
            b2 = src2.value()
            where = src2.coord()
            src2.next()
        sink.append(where, table[b1, b2])
    return sink.finish()


def image_bool_lines(dst: RleImage, src: RleImage, dx: int, dy: int, op: BoolOp) -> RleImage:
    """Line-at-a-time form of `image_bool` built on `line_bool`."""
    lines = dst.lines
    src_lines = src.lines
    out = []
    for y in range(dst.height):
        sy = y - dy
        other = src_lines[sy] if 0 <= sy < src.height else []
        out.append(line_bool(lines[y], other, dx, op, dst.width))
    return RleImage.from_lines(dst.width, dst.height, out)


def _intersect(a_s, a_e, b_s, b_e):
    """Intersection of two sorted, disjoint, non-touching interval sets."""
    lo = np.searchsorted(b_e, a_s, side="right")   # first b ending after a starts
    hi = np.searchsorted(b_s, a_e, side="left")    # first b starting at/after a ends
    counts = np.maximum(hi - lo, 0)
    i = np.repeat(np.arange(a_s.shape[0]), counts)
    j = np.repeat(lo - np.r_[0, np.cumsum(counts)[:-1]], counts) + np.arange(int(counts.sum()))
    return np.maximum(a_s[i], b_s[j]), np.minimum(a_e[i], b_e[j])


def _union(a_s, a_e, b_s, b_e):
    s = np.concatenate([a_s, b_s])
    e = np.concatenate([a_e, b_e])
    order = np.argsort(s, kind="stable")
    return merge_flat(s[order], e[order])


def _events(a_s, a_e, b_s, b_e, op, width, height, stride):
    """General path: merge the transition streams of both images and the row windows."""
    rows = np.arange(height, dtype=np.int64) * stride
    coords = np.concatenate([a_s, a_e, b_s, b_e, rows, rows + width])
    na, nb = a_s.shape[0], b_s.shape[0]
    da = np.concatenate([np.ones(na, np.int8), -np.ones(na, np.int8), np.zeros(2 * nb + 2 * height, np.int8)])
    db = np.concatenate([np.zeros(2 * na, np.int8), np.ones(nb, np.int8), -np.ones(nb, np.int8),
                         np.zeros(2 * height, np.int8)])
    dw = np.concatenate([np.zeros(2 * na + 2 * nb, np.int8), np.ones(height, np.int8), -np.ones(height, np.int8)])
    order = np.argsort(coords, kind="stable")
    c = coords[order]
    va = np.cumsum(da[order]) > 0
    vb = np.cumsum(db[order]) > 0
    vw = np.cumsum(dw[order]) > 0
    # value after the last event at each distinct coordinate
    last = np.flatnonzero(np.r_[c[1:] != c[:-1], True])
    cc = c[last]
    val = op(va[last], vb[last]) & vw[last]
    prev = np.r_[False, val[:-1]]
    return cc[val & ~prev], cc[~val & prev]


def image_bool(dst: RleImage, src: RleImage, dx: int, dy: int, op: BoolOp,
               counter: BlitCounter | None = None) -> RleImage:
    """``out(x, y) = op(dst(x, y), src(x - dx, y - dy))``; outside reads are white.

    All lines are handled at once on a single flat axis (rows separated by
    a one-pixel gap).  AND and OR are interval intersection and union;
    other operations merge the transition streams of both images and of
    the row windows in order and read the value changes back as runs.
    """
    if (dst.width, dst.height) != (src.width, src.height):
        raise ValueError("images differ in size")
    if counter is not None:
        counter.record(op.value, dx, dy)
    width, height = dst.width, dst.height
    stride = width + 1
    moved = shift_image(src, dx, dy) if (dx or dy) else src
    a_s, a_e, _ = flat_runs(dst, stride)
    if op is BoolOp.ANDNOT:
        moved = complement(moved)
        op = BoolOp.AND
    b_s, b_e, _ = flat_runs(moved, stride)
    if op is BoolOp.AND:
        fs, fe = _intersect(a_s, a_e, b_s, b_e)
    elif op is BoolOp.OR:
        fs, fe = _union(a_s, a_e, b_s, b_e)
    else:
        fs, fe = _events(a_s, a_e, b_s, b_e, op, width, height, stride)
    return from_flat(width, height, fs, fe, stride)


def image_shift_bool(image: RleImage, dx: int, dy: int, op: BoolOp,
                     counter: BlitCounter | None = None) -> RleImage:
    """`image_bool` of an image with a shifted copy of itself."""
    return image_bool(image, image, dx, dy, op, counter)


def vertical_window(image: RleImage, length: int, lead: int, op: BoolOp,
                    centering: str = "pre-shift", counter: BlitCounter | None = None) -> RleImage:
    """``out(x, y) = op over k in [-lead, length-1-lead] of image(x, y + k)`` by doubling."""
    if length < 1:
        raise ValueError("segment length must be >= 1")
    if length == 1 and lead == 0:
        return image
    if op is not BoolOp.AND:
        m = length - 1
        big = pad_image(image, 0, m, 0, m)
        out = _vwindow(big, length, lead, op, centering, counter)
        return crop_image(out, 0, m, image.width, image.height)
    return _vwindow(image, length, lead, op, centering, counter)


def _vwindow(image: RleImage, length: int, lead: int, op: BoolOp, centering: str,
             counter: BlitCounter | None) -> RleImage:
    work = image
    width = 1
    if centering == "pre-shift":
        while 2 * width < length:
            work = image_shift_bool(work, 0, -width, op, counter)
            width *= 2
        if width < length:
            work = image_shift_bool(work, 0, -(length - width), op, counter)
        if lead == 0:
            return work
        if counter is not None:
            counter.record("shift", 0, lead)
        return shift_image(work, 0, lead)
    if centering == "border-friendly":
        while 2 * width < length:
            work = image_shift_bool(work, 0, -width, op, counter)
            width *= 2
        acc = RleImage.full(image.width, image.height) if op is BoolOp.AND \
            else RleImage.empty(image.width, image.height)
        acc = image_bool(acc, work, 0, lead, op, counter)
        return image_bool(acc, work, 0, lead - (length - width), op, counter)
    raise ValueError(f"unknown centering {centering!r}")


def vlog_morph(image: RleImage, v: int, kind: str, centering: str = "pre-shift",
               counter: BlitCounter | None = None) -> RleImage:
    """Vertical erosion/dilation by a ``1 x v`` segment, origin ``v // 2`` from the bottom."""
    if v < 1:
        raise ValueError(f"segment length must be >= 1, got {v}")
    if kind == "erode":
        return vertical_window(image, v, v // 2, BoolOp.AND, centering, counter)
    if kind == "dilate":
        return vertical_window(image, v, v - 1 - v // 2, BoolOp.OR, centering, counter)
    raise ValueError(f"unknown kind {kind!r}")
