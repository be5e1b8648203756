"""2D morphology with rectangular masks on run-length images.

Strategies:

``brute-force``
    one shifted AND/OR per mask pixel (reference only, slow)
``transpose-within-line``
    within-line pass, transpose, within-line pass, transpose back
``mixed-within-between``
    within-line pass, then a vertical pass by logarithmic decomposition
    of between-line boolean operations (the default; within-line first,
    since it is cheap and usually reduces the run count)
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from . import rle
from .bitblit import BlitCounter, BoolOp, bitblit_rect_morph
from .lineops import image_bool, vlog_morph
from .morph1d import within_line_erode_dilate
from .rle import RleImage
from .transpose import transpose_coherent

KINDS = ("erode", "dilate", "open", "close")


class RectStrategy(enum.Enum):
    BRUTE_FORCE = "brute-force"
    TRANSPOSE = "transpose-within-line"
    MIXED = "mixed-within-between"


@dataclass(frozen=True)
class EngineChoice:
    tag: str = "auto"        # "rle" | "bitblit" | "auto"
    threshold: int = 5

    def __post_init__(self):
        if self.tag not in ("rle", "bitblit", "auto"):
            raise ValueError(f"unknown engine {self.tag!r}")
        if self.threshold < 1:
            raise ValueError("threshold must be positive")

    def resolve(self, u: int, v: int) -> str:
        if self.tag != "auto":
            return self.tag
        return "bitblit" if max(u, v) <= self.threshold else "rle"


def _brute_pass(image: RleImage, u: int, v: int, kind: str, counter) -> RleImage:
    if kind == "erode":
        op, ox, oy = BoolOp.AND, u // 2, v // 2
        acc = RleImage.full(image.width, image.height)
        sign = -1
    else:
        op, ox, oy = BoolOp.OR, u // 2, v // 2
        acc = RleImage.empty(image.width, image.height)
        sign = 1
    for j in range(v):
        for i in range(u):
            acc = image_bool(acc, image, sign * (i - ox), sign * (j - oy), op, counter)
    return acc


def _separable_pass(image: RleImage, u: int, v: int, kind: str, strategy: RectStrategy,
                    counter: BlitCounter | None) -> RleImage:
    if strategy is RectStrategy.BRUTE_FORCE:
        return _brute_pass(image, u, v, kind, counter)
    out = within_line_erode_dilate(image, u, kind) if u > 1 else image
    if v == 1:
        return out
    if strategy is RectStrategy.MIXED:
        return vlog_morph(out, v, kind, counter=counter)
    t = transpose_coherent(out)
    t = within_line_erode_dilate(t, v, kind)
    return transpose_coherent(t)


def rect_morph(image: RleImage, u: int, v: int, kind: str,
               strategy: RectStrategy | str = RectStrategy.MIXED,
               counter: BlitCounter | None = None) -> RleImage:
    """Erode/dilate/open/close by a ``u x v`` rectangle with origin ``(u//2, v//2)``."""
    if u < 1 or v < 1:
        raise ValueError("mask size must be >= 1")
    strategy = RectStrategy(strategy)
    if kind in ("erode", "dilate"):
        return _separable_pass(image, u, v, kind, strategy, counter)
    if kind == "open":
        eroded = _separable_pass(image, u, v, "erode", strategy, counter)
        return _separable_pass(eroded, u, v, "dilate", strategy, counter)
    if kind == "close":
        # dilate on a padded canvas so the intermediate is not clipped
        big = rle.pad(image, u, v, u, v)
        dil = _separable_pass(big, u, v, "dilate", strategy, counter)
        ero = _separable_pass(dil, u, v, "erode", strategy, counter)
        return rle.crop(ero, u, v, image.width, image.height)
    raise ValueError(f"unknown morphology kind {kind!r}")


def auto_rect_morph(image: RleImage, u: int, v: int, kind: str,
                    choice: EngineChoice | None = None,
                    strategy: RectStrategy | str = RectStrategy.MIXED) -> tuple[RleImage, str]:
    """Like `rect_morph` but may run on packed bitmaps; returns ``(result, engine_used)``."""
    choice = choice or EngineChoice()
    engine = choice.resolve(u, v)
    if engine == "bitblit":
        packed = bitblit_rect_morph(rle.to_bitmap(image), u, v, kind)
        return rle.from_bitmap(packed), engine
    return rect_morph(image, u, v, kind, strategy), engine
