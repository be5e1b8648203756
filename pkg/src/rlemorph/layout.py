"""Layout analysis: spacing estimation, smearing by closing, block boxes."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .analysis import Connectivity, component_stats, label_components, runlength_histograms
from .morph2d import EngineChoice, auto_rect_morph
from .rle import RleImage

Box = tuple[int, int, int, int]


@dataclass(frozen=True)
class LayoutConfig:
    percentile: float = 75.0     # of in-cap white gaps
    cap_fraction: float = 0.1    # gaps longer than this fraction of the page side are ignored
    min_area: int = 16
    connectivity: str = "eight"
    engine: str = "auto"         # auto | rle | bitblit
    threshold: int = 5


@dataclass(frozen=True)
class Spacing:
    inter_word: int
    inter_line: int


def _nearest_rank(hist: dict[int, int], cap: float, q: float) -> int | None:
    lengths = [(k, v) for k, v in hist.items() if k <= cap]
    if not lengths:
        return None
    keys = np.array([k for k, _ in lengths])
    counts = np.array([v for _, v in lengths])
    rank = max(1, int(np.ceil(q / 100 * counts.sum())))
    return int(keys[np.searchsorted(np.cumsum(counts), rank)])


def estimate_spacing(image: RleImage, config: LayoutConfig = LayoutConfig()) -> Spacing:
    """Nearest-rank percentile of horizontal / vertical white gaps up to a cap."""
    if image.nruns == 0:
        raise ValueError("blank image: no spacing statistics")
    word = _nearest_rank(runlength_histograms(image, "horizontal", "white"),
                         image.width * config.cap_fraction, config.percentile)
    line = _nearest_rank(runlength_histograms(image, "vertical", "white"),
                         image.height * config.cap_fraction, config.percentile)
    if word is None or line is None:
        raise ValueError("no white gaps within the cap: spacing is undefined")
    return Spacing(word, line)


def smear(image: RleImage, spacing: Spacing, config: LayoutConfig = LayoutConfig()) -> tuple[RleImage, str]:
    choice = EngineChoice(config.engine, config.threshold)
    return auto_rect_morph(image, spacing.inter_word + 1, spacing.inter_line + 1, "close", choice)


def layout_blocks(image: RleImage, config: LayoutConfig = LayoutConfig(),
                  spacing: Spacing | None = None) -> list[Box]:
    """Boxes ``(x0, y0, x1, y1)`` of smeared blocks, top-to-bottom then left-to-right."""
    spacing = spacing or estimate_spacing(image, config)
    closed, _ = smear(image, spacing, config)
    lm = label_components(closed, Connectivity.parse(config.connectivity))
    boxes = [c.box for c in component_stats(closed, lm) if c.area >= config.min_area]
    boxes.sort(key=lambda b: (-b[3], b[0], -b[1], b[2]))
    return boxes
