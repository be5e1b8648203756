"""Synthetic inputs: random images, document-like pages, constructed text grids."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .rle import RleImage


def random_image(rng: np.random.Generator, width: int, height: int, density: float) -> RleImage:
    return RleImage.from_array(rng.random((height, width)) < density)


def random_blobs(rng: np.random.Generator, width: int, height: int, count: int = 6,
                 rmin: float = 3.0, rmax: float = 10.0) -> RleImage:
    yy, xx = np.mgrid[:height, :width]
    a = np.zeros((height, width), dtype=bool)
    for _ in range(count):
        cx, cy = rng.uniform(0, width), rng.uniform(0, height)
        r = rng.uniform(rmin, rmax)
        a |= (xx - cx) ** 2 + (yy - cy) ** 2 <= r * r
    return RleImage.from_array(a)


def _glyph(rng: np.random.Generator, w: int, h: int) -> np.ndarray:
    """A connected letter-like shape inside ``h x w``: a thick ring, sometimes opened on one side."""
    g = np.ones((h, w), dtype=bool)
    t = int(rng.integers(2, 5))
    if w > 2 * t and h > 2 * t:
        g[t:h - t, t:w - t] = False
        side = int(rng.integers(0, 6))
        if side == 0:
            g[t:h - t, w - t:] = False          # like "c"
        elif side == 1:
            g[h - t:, t:w - t] = False          # like "u"
        elif side == 2:
            g[:t, t:w - t] = False              # like "n"
    return g


@dataclass
class PageConfig:
    """Document-like page; defaults mimic a 300 dpi letter page of body text."""
    width: int = 2550
    height: int = 3300
    margin: int = 150
    glyph_w: tuple[int, int] = (12, 20)
    glyph_h: tuple[int, int] = (18, 26)
    letter_gap: int = 3
    word_gap: tuple[int, int] = (12, 20)
    line_gap: int = 14
    word_len: tuple[int, int] = (2, 9)
    columns: int = 1
    column_gap: int = 80
    paragraph_every: tuple[int, int] = (6, 14)


def document_page(rng: np.random.Generator, config: PageConfig | None = None) -> RleImage:
    """Lines of words of glyphs in one or more columns, with paragraph breaks."""
    c = config or PageConfig()
    a = np.zeros((c.height, c.width), dtype=bool)
    col_w = (c.width - 2 * c.margin - (c.columns - 1) * c.column_gap) // c.columns
    line_h = c.glyph_h[1] + c.line_gap
    for col in range(c.columns):
        x_lo = c.margin + col * (col_w + c.column_gap)
        x_hi = x_lo + col_w
        top = c.height - c.margin
        until_break = int(rng.integers(*c.paragraph_every))
        while top - line_h >= c.margin:
            x = x_lo + (int(rng.integers(20, 60)) if until_break == 0 else 0)
            ragged = x_hi - int(rng.integers(0, col_w // 3)) if until_break == 1 else x_hi
            while True:
                n = int(rng.integers(*c.word_len))
                widths = rng.integers(*c.glyph_w, size=n)
                if x + widths.sum() + c.letter_gap * (n - 1) > ragged:
                    break
                for gw in widths.tolist():
                    gh = int(rng.integers(*c.glyph_h))
                    g = _glyph(rng, gw, gh)
                    y0 = top - c.glyph_h[1]
                    a[y0:y0 + gh, x:x + gw] |= g
                    x += gw + c.letter_gap
                x += int(rng.integers(*c.word_gap)) - c.letter_gap
            top -= line_h
            until_break -= 1
            if until_break < 0:
                top -= 2 * line_h
                until_break = int(rng.integers(*c.paragraph_every))
    return RleImage.from_array(a)


@dataclass
class GridSpec:
    """Text grid with known spacing: clusters of solid glyph blocks.

    Within a cluster glyphs are ``glyph_w x glyph_h`` blocks separated by
    `word_gap` horizontally and `line_gap` vertically; clusters are far apart.
    """
    width: int = 600
    height: int = 500
    glyph_w: int = 5
    glyph_h: int = 7
    word_gap: int = 3
    line_gap: int = 4
    cluster_cols: int = 6
    cluster_rows: int = 3
    clusters_x: int = 2
    clusters_y: int = 2
    cluster_sep_x: int = 90
    cluster_sep_y: int = 80
    origin: tuple[int, int] = (40, 50)

    @property
    def cluster_size(self) -> tuple[int, int]:
        cw = self.cluster_cols * self.glyph_w + (self.cluster_cols - 1) * self.word_gap
        ch = self.cluster_rows * self.glyph_h + (self.cluster_rows - 1) * self.line_gap
        return cw, ch


def text_grid(spec: GridSpec) -> tuple[RleImage, list[tuple[int, int, int, int]]]:
    """The grid image and its cluster boxes, sorted top-to-bottom then left-to-right."""
    a = np.zeros((spec.height, spec.width), dtype=bool)
    cw, ch = spec.cluster_size
    boxes = []
    for j in range(spec.clusters_y):
        for i in range(spec.clusters_x):
            x0 = spec.origin[0] + i * (cw + spec.cluster_sep_x)
            y0 = spec.origin[1] + j * (ch + spec.cluster_sep_y)
            for r in range(spec.cluster_rows):
                for k in range(spec.cluster_cols):
                    gx = x0 + k * (spec.glyph_w + spec.word_gap)
                    gy = y0 + r * (spec.glyph_h + spec.line_gap)
                    a[gy:gy + spec.glyph_h, gx:gx + spec.glyph_w] = True
            boxes.append((x0, y0, x0 + cw, y0 + ch))
    if max(b[2] for b in boxes) > spec.width or max(b[3] for b in boxes) > spec.height:
        raise ValueError("grid does not fit the page")
    boxes.sort(key=lambda b: (-b[3], b[0]))
    return RleImage.from_array(a), boxes


def grid_corpus() -> list[GridSpec]:
    """Grid variants covering several spacings and cluster layouts."""
    out = []
    for word_gap, line_gap, gw, gh in [(3, 4, 5, 7), (2, 3, 5, 7), (4, 6, 7, 9), (5, 5, 6, 8),
                                       (1, 2, 4, 6), (6, 8, 9, 12)]:
        for cx, cy in [(2, 2), (3, 1), (1, 3)]:
            out.append(GridSpec(word_gap=word_gap, line_gap=line_gap, glyph_w=gw, glyph_h=gh,
                                clusters_x=cx, clusters_y=cy))
    return out
