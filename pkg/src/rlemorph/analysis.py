"""Connected components over runs, component statistics, run-length histograms, LAG edges."""
from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .rle import RleImage
from .transpose import transpose


class Connectivity(enum.Enum):
    FOUR = "four"
    EIGHT = "eight"

    @classmethod
    def parse(cls, value: "Connectivity | str | int") -> "Connectivity":
        if isinstance(value, Connectivity):
            return value
        return {"4": cls.FOUR, "four": cls.FOUR, "8": cls.EIGHT, "eight": cls.EIGHT}[str(value).lower()]

    def connects(self, a: tuple[int, int], b: tuple[int, int]) -> bool:
        """Whether runs `a` and `b` on adjacent lines are connected."""
        if self is Connectivity.FOUR:
            return max(a[0], b[0]) < min(a[1], b[1])
        return max(a[0], b[0]) <= min(a[1], b[1])


@dataclass(frozen=True, eq=False)
class LabelMap:
    """One label per run, in run-array order (``labels[offsets[y]:offsets[y+1]]`` is line ``y``)."""
    labels: np.ndarray
    offsets: np.ndarray
    count: int

    def line(self, y: int) -> list[int]:
        return self.labels[self.offsets[y]:self.offsets[y + 1]].tolist()

    def to_array(self, image: RleImage) -> np.ndarray:
        """Per-pixel labels, -1 on white."""
        out = np.full((image.height, image.width), -1, dtype=np.int64)
        ys = image.line_ids()
        for k, ((s, e), y) in enumerate(zip(image.runs.tolist(), ys.tolist())):
            out[y, s:e] = self.labels[k]
        return out


def adjacent_pairs(image: RleImage, conn: Connectivity | str = Connectivity.EIGHT) -> tuple[np.ndarray, np.ndarray]:
    """Indices ``(i, j)`` of connected runs with run ``i`` on line ``y`` and ``j`` on line ``y + 1``.

    Every run of line ``y + 1`` is moved down one line on a flat axis; the
    partners of run ``i`` are then a contiguous slice found by binary search.
    """
    conn = Connectivity.parse(conn)
    n = image.nruns
    if n == 0:
        return np.zeros(0, np.int64), np.zeros(0, np.int64)
    stride = image.width + 2  # the extra gap keeps touching runs of other lines apart
    base = image.line_ids() * stride
    s = base + image.runs[:, 0]
    e = base + image.runs[:, 1]
    ds, de = s - stride, e - stride   # still sorted
    if conn is Connectivity.FOUR:
        lo = np.searchsorted(de, s, side="right")   # first j with e_j > s_i
        hi = np.searchsorted(ds, e, side="left")    # first j with s_j >= e_i
    else:
        lo = np.searchsorted(de, s, side="left")    # first j with e_j >= s_i
        hi = np.searchsorted(ds, e, side="right")   # first j with s_j > e_i
    counts = np.maximum(hi - lo, 0)
    total = int(counts.sum())
    i = np.repeat(np.arange(n, dtype=np.int64), counts)
    j = np.repeat(lo - np.r_[0, np.cumsum(counts)[:-1]], counts) + np.arange(total)
    return i, j


def _dense_by_first_appearance(roots: np.ndarray) -> tuple[np.ndarray, int]:
    uniq, first, inverse = np.unique(roots, return_index=True, return_inverse=True)
    rank = np.empty(uniq.shape[0], dtype=np.int64)
    rank[np.argsort(first, kind="stable")] = np.arange(uniq.shape[0])
    return rank[inverse], int(uniq.shape[0])


def _hook_and_compress(n: int, i: np.ndarray, j: np.ndarray) -> np.ndarray:
    """Roots of a union-find over `n` elements with unions ``(i[k], j[k])``.

    Each round hooks the larger of two roots under the smaller, then
    compresses paths by pointer jumping; rounds repeat until every pair
    shares a root.
    """
    parent = np.arange(n, dtype=np.int64)
    while True:
        pi, pj = parent[i], parent[j]
        diff = pi != pj
        if not diff.any():
            return parent
        lo = np.minimum(pi[diff], pj[diff])
        hi = np.maximum(pi[diff], pj[diff])
        np.minimum.at(parent, hi, lo)
        while True:
            grand = parent[parent]
            if np.array_equal(grand, parent):
                break
            parent = grand


class UnionFind:
    """Sequential disjoint sets with path compression and union by size."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, a: int) -> int:
        root = a
        parent = self.parent
        while parent[root] != root:
            root = parent[root]
        while parent[a] != root:
            parent[a], a = root, parent[a]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]


def _sweep_unions(image: RleImage, conn: Connectivity, uf: UnionFind) -> None:
    """Two-cursor sweep over each pair of adjacent lines."""
    lines = image.lines
    off = image.offsets.tolist()
    slack = 0 if conn is Connectivity.FOUR else 1
    for y in range(image.height - 1):
        a, b = lines[y], lines[y + 1]
        p = q = 0
        while p < len(a) and q < len(b):
            (s1, e1), (s2, e2) = a[p], b[q]
            if max(s1, s2) < min(e1, e2) + slack:
                uf.union(off[y] + p, off[y + 1] + q)
            # advance whichever run ends first
            if e1 < e2:
                p += 1
            elif e2 < e1:
                q += 1
            else:
                # later runs start past both ends, so neither run has partners left
                p += 1
                q += 1


def label_components(image: RleImage, conn: Connectivity | str = Connectivity.EIGHT,
                     method: str = "vectorized") -> LabelMap:
    """Label runs by connected component; labels are dense, in order of first appearance.

    ``method="sweep"`` uses the sequential union-find and per-line two-cursor
    sweep; the default finds all adjacent pairs at once.
    """
    conn = Connectivity.parse(conn)
    n = image.nruns
    if n == 0:
        return LabelMap(np.zeros(0, np.int64), image.offsets.copy(), 0)
    if method == "sweep":
        uf = UnionFind(n)
        _sweep_unions(image, conn, uf)
        roots = np.array([uf.find(k) for k in range(n)], dtype=np.int64)
    elif method == "vectorized":
        i, j = adjacent_pairs(image, conn)
        roots = _hook_and_compress(n, i, j)
    else:
        raise ValueError(f"unknown method {method!r}")
    labels, count = _dense_by_first_appearance(roots)
    return LabelMap(labels, image.offsets.copy(), count)


@dataclass(frozen=True)
class ComponentStats:
    """Per-component summary; boxes are half-open ``(x0, y0, x1, y1)``.

    Coordinates are pixel indices, so a lone pixel at ``(x, y)`` has centroid
    ``(x, y)``.  ``sxx, syy, sxy`` are raw sums of ``x*x``, ``y*y``, ``x*y``.
    """
    label: int
    box: tuple[int, int, int, int]
    area: int
    centroid: tuple[float, float]
    sxx: float
    syy: float
    sxy: float

    @property
    def central_moments(self) -> tuple[float, float, float]:
        """``(mu20, mu02, mu11)`` divided by area."""
        cx, cy = self.centroid
        a = self.area
        return self.sxx / a - cx * cx, self.syy / a - cy * cy, self.sxy / a - cx * cy


def component_stats(image: RleImage, lm: LabelMap) -> list[ComponentStats]:
    if lm.labels.shape[0] != image.nruns or not np.array_equal(lm.offsets, image.offsets):
        raise ValueError("label map does not belong to this image")
    k = lm.count
    if k == 0:
        return []
    lab = lm.labels
    s = image.runs[:, 0].astype(np.float64)
    e = image.runs[:, 1].astype(np.float64)
    y = image.line_ids().astype(np.float64)
    n = e - s
    sx = (s + e - 1) * n / 2

    def sq(m):  # sum of i*i for i in [0, m]
        return m * (m + 1) * (2 * m + 1) / 6
    sxx = sq(e - 1) - sq(s - 1)
    area = np.bincount(lab, n, k)
    tx = np.bincount(lab, sx, k)
    ty = np.bincount(lab, y * n, k)
    txx = np.bincount(lab, sxx, k)
    tyy = np.bincount(lab, y * y * n, k)
    txy = np.bincount(lab, y * sx, k)
    x0 = np.full(k, np.inf)
    y0 = np.full(k, np.inf)
    x1 = np.full(k, -np.inf)
    y1 = np.full(k, -np.inf)
    np.minimum.at(x0, lab, s)
    np.minimum.at(y0, lab, y)
    np.maximum.at(x1, lab, e)
    np.maximum.at(y1, lab, y + 1)
    return [ComponentStats(c, (int(x0[c]), int(y0[c]), int(x1[c]), int(y1[c])), int(area[c]),
                           (float(tx[c] / area[c]), float(ty[c] / area[c])),
                           float(txx[c]), float(tyy[c]), float(txy[c]))
            for c in range(k)]


def component_boxes(image: RleImage, conn: Connectivity | str = Connectivity.EIGHT) -> list[tuple[int, int, int, int]]:
    return [c.box for c in component_stats(image, label_components(image, conn))]


def runlength_histograms(image: RleImage, axis: str = "horizontal", color: str = "black") -> dict[int, int]:
    """Histogram ``length -> count`` of black runs or of white gaps between runs.

    White runs touching the image border are not counted.  Vertical
    histograms are the horizontal ones of the transposed image.
    """
    if axis == "vertical":
        image = transpose(image)
    elif axis != "horizontal":
        raise ValueError(f"unknown axis {axis!r}")
    s = image.runs[:, 0].astype(np.int64)
    e = image.runs[:, 1].astype(np.int64)
    if color == "black":
        lengths = e - s
    elif color == "white":
        ys = image.line_ids()
        same = ys[1:] == ys[:-1]
        lengths = (s[1:] - e[:-1])[same]
    else:
        raise ValueError(f"unknown color {color!r}")
    return dict(sorted(Counter(lengths.tolist()).items()))


def lag_edges(image: RleImage) -> list[tuple[int, int, int, int]]:
    """``(y, i, y + 1, j)`` for every pair of overlapping runs on adjacent lines."""
    i, j = adjacent_pairs(image, Connectivity.FOUR)
    ys = image.line_ids()
    off = image.offsets
    yi = ys[i]
    return [(a, b, a + 1, c) for a, b, c in
            zip(yi.tolist(), (i - off[yi]).tolist(), (j - off[yi + 1]).tolist())]
