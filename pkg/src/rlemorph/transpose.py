"""Exchange of axes on run-length images.

Output line ``k`` collects the vertical runs of input column ``k``: input
pixel ``(x, y)`` becomes output pixel ``(y, x)``.
"""
from __future__ import annotations

import numpy as np

from .rle import COORD_DTYPE, RleImage


def _assemble(in_width: int, in_height: int, col: np.ndarray, start: np.ndarray,
              end: np.ndarray) -> RleImage:
    order = np.lexsort((start, col))
    runs = np.empty((col.shape[0], 2), COORD_DTYPE)
    runs[:, 0] = start[order]
    runs[:, 1] = end[order]
    offsets = np.zeros(in_width + 1, np.int64)
    np.cumsum(np.bincount(col, minlength=in_width), out=offsets[1:])
    return RleImage(in_height, in_width, runs, offsets)


def transpose_simple(image: RleImage) -> RleImage:
    """Decode each line to pixels and extend one open vertical run per column."""
    w, h = image.width, image.height
    open_since = np.full(w, -1, dtype=np.int64)
    cols: list[np.ndarray] = []
    starts: list[np.ndarray] = []
    ends: list[np.ndarray] = []
    row = np.zeros(w, dtype=bool)
    for i, line in enumerate(image.lines):
        row[:] = False
        for s, e in line:
            row[s:e] = True
        is_open = open_since >= 0
        closing = np.flatnonzero(is_open & ~row)
        if closing.size:
            cols.append(closing)
            starts.append(open_since[closing])
            ends.append(np.full(closing.size, i, np.int64))
            open_since[closing] = -1
        open_since[row & ~is_open] = i
    remaining = np.flatnonzero(open_since >= 0)
    cols.append(remaining)
    starts.append(open_since[remaining])
    ends.append(np.full(remaining.size, h, np.int64))
    return _assemble(w, h, np.concatenate(cols), np.concatenate(starts), np.concatenate(ends))


def _merge_line(opens, runs, i, closed):
    """One sweep step: returns the new open intervals, appends finished ones to `closed`.

    `opens` holds disjoint ``(a, b, since)`` column intervals sorted by `a`,
    each an open vertical run started at line `since`.  Open columns not
    covered by `runs` finish; covered columns continue; columns of `runs`
    with no open interval start fresh at line `i`.
    """
    out = []
    it = iter(opens)
    cur = next(it, None)
    for s, e in runs:
        while cur is not None and cur[0] < s:
            a, b, t = cur
            if b <= s:
                closed.append(cur)
                cur = next(it, None)
            else:
                closed.append((a, s, t))
                cur = (s, b, t)
        x = s
        while x < e:
            if cur is not None and cur[0] == x:
                a, b, t = cur
                if b <= e:
                    piece = (x, b, t)
                    cur = next(it, None)
                else:
                    piece = (x, e, t)
                    cur = (e, b, t)
            else:
                stop = e if cur is None else min(e, cur[0])
                piece = (x, stop, i)
            if out and out[-1][1] == piece[0] and out[-1][2] == piece[2]:
                out[-1] = (out[-1][0], piece[1], piece[2])
            else:
                out.append(piece)
            x = piece[1]
    while cur is not None:
        closed.append(cur)
        cur = next(it, None)
    return out


def transpose_coherent(image: RleImage) -> RleImage:
    """Interval-merge transpose exploiting coherence between consecutive lines."""
    w, h = image.width, image.height
    opens: list[tuple[int, int, int]] = []
    fin_a: list[int] = []
    fin_b: list[int] = []
    fin_t: list[int] = []
    fin_i: list[int] = []
    closed: list[tuple[int, int, int]] = []
    for i, line in enumerate(image.lines):
        opens = _merge_line(opens, line, i, closed)
        if closed:
            for a, b, t in closed:
                fin_a.append(a)
                fin_b.append(b)
                fin_t.append(t)
                fin_i.append(i)
            closed.clear()
    for a, b, t in opens:
        fin_a.append(a)
        fin_b.append(b)
        fin_t.append(t)
        fin_i.append(h)
    a = np.asarray(fin_a, np.int64)
    b = np.asarray(fin_b, np.int64)
    lens = b - a
    # expand each finished column interval into one output run per column
    col = np.repeat(a - np.r_[0, np.cumsum(lens)[:-1]], lens) + np.arange(int(lens.sum()))
    start = np.repeat(np.asarray(fin_t, np.int64), lens)
    end = np.repeat(np.asarray(fin_i, np.int64), lens)
    return _assemble(w, h, col, start, end)


def _expand(image: RleImage) -> tuple[np.ndarray, np.ndarray]:
    """Every pixel of `image` as ``(x, y)`` arrays, line by line."""
    s = image.runs[:, 0].astype(np.int64)
    lens = image.runs[:, 1].astype(np.int64) - s
    total = int(lens.sum())
    first = np.r_[0, np.cumsum(lens)[:-1]]
    x = np.repeat(s - first, lens) + np.arange(total)
    y = np.repeat(image.line_ids(), lens)
    return x, y


def transpose_edges(image: RleImage) -> RleImage:
    """Array-at-once transpose from the bottom and top pixels of every vertical run.

    ``bottoms = A & ~A(y - 1)`` and ``tops = A & ~A(y + 1)`` are computed as
    run-length boolean operations; sorting both pixel sets by column then
    row pairs each bottom with its top.
    """
    from .bitblit import BoolOp
    from .lineops import image_bool
    bottoms = image_bool(image, image, 0, 1, BoolOp.ANDNOT)
    tops = image_bool(image, image, 0, -1, BoolOp.ANDNOT)
    bx, by = _expand(bottoms)
    tx, ty = _expand(tops)
    ob = np.lexsort((by, bx))
    ot = np.lexsort((ty, tx))
    return _assemble(image.width, image.height, bx[ob], by[ob], ty[ot] + 1)


transpose = transpose_edges
