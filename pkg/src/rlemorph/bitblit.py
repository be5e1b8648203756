"""Word-packed binary images and the shifted boolean blit.

Pixel ``(x, y)`` lives in word ``x // 64`` of row ``y``, bit ``x % 64``
(least significant bit first).  Row 0 is the bottom row.  Padding bits past
the image width are kept at zero after every operation.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Literal

import numpy as np

if TYPE_CHECKING:
    from .structuring import StructuringElement

WORD_BITS = 64
_ONE = np.uint64(1)
_ALL = np.uint64(0xFFFFFFFFFFFFFFFF)

Kind = Literal["erode", "dilate", "open", "close"]
Centering = Literal["pre-shift", "border-friendly"]


class BoolOp(enum.Enum):
    """Combines a destination value with a (shifted) source value."""
    AND = "and"
    OR = "or"
    XOR = "xor"
    ANDNOT = "andnot"   # dst & ~src
    ORNOT = "ornot"     # dst | ~src

    def __call__(self, dst, src):
        # works for numpy bool arrays and uint64 word arrays alike
        if self is BoolOp.AND:
            return dst & src
        if self is BoolOp.OR:
            return dst | src
        if self is BoolOp.XOR:
            return dst ^ src
        if self is BoolOp.ANDNOT:
            return dst & ~src
        return dst | ~src

    def bit(self, a: bool, b: bool) -> bool:
        """Scalar form; Python's ``~True`` is -2, so go through numpy bools."""
        return bool(self(np.bool_(a), np.bool_(b)))

    @classmethod
    def parse(cls, name: str) -> "BoolOp":
        return cls(name.lower().replace("-", "").replace("_", ""))


@dataclass
class BlitCounter:
    """Instrumentation for decomposition costs."""
    bool_ops: int = 0   # shifted boolean operations into an image
    shifts: int = 0     # plain translations (centering)
    copies: int = 0
    log: list[tuple[str, int, int]] = field(default_factory=list)

    def record(self, what: str, dx: int = 0, dy: int = 0) -> None:
        if what == "shift":
            self.shifts += 1
        elif what == "copy":
            self.copies += 1
        else:
            self.bool_ops += 1
        self.log.append((what, dx, dy))


class PackedBitmap:
    __slots__ = ("width", "height", "words")

    def __init__(self, width: int, height: int, words: np.ndarray | None = None):
        if width < 1 or height < 1:
            raise ValueError(f"bad bitmap size {width}x{height}")
        self.width = width = int(width)
        self.height = height = int(height)
        nw = -(-width // WORD_BITS)
        if words is None:
            words = np.zeros((height, nw), dtype=np.uint64)
        elif words.shape != (height, nw) or words.dtype != np.uint64:
            raise ValueError(f"word array must be uint64 of shape {(height, nw)}")
        self.words = words

    @property
    def row_words(self) -> int:
        return self.words.shape[1]

    @property
    def packed_row_bytes(self) -> int:
        return -(-self.width // 8)

    def padding_mask(self) -> np.uint64:
        rem = self.width % WORD_BITS
        return _ALL if rem == 0 else np.uint64((1 << rem) - 1)

    def clear_padding(self) -> None:
        self.words[:, -1] &= self.padding_mask()

    def copy(self) -> "PackedBitmap":
        return PackedBitmap(self.width, self.height, self.words.copy())

    @classmethod
    def ones(cls, width: int, height: int) -> "PackedBitmap":
        b = cls(width, height)
        b.words[:] = _ALL
        b.clear_padding()
        return b

    @classmethod
    def from_array(cls, pixels: np.ndarray) -> "PackedBitmap":
        """From a boolean array indexed ``[y, x]``, row 0 at the bottom."""
        pixels = np.asarray(pixels, dtype=bool)
        height, width = pixels.shape
        nw = -(-width // WORD_BITS)
        padded = np.zeros((height, nw * WORD_BITS), dtype=bool)
        padded[:, :width] = pixels
        packed = np.packbits(padded, axis=1, bitorder="little")
        words = packed.view("<u8").astype(np.uint64).reshape(height, nw)
        return cls(width, height, words)

    def to_array(self) -> np.ndarray:
        raw = self.words.astype("<u8").view(np.uint8)
        bits = np.unpackbits(raw, axis=1, bitorder="little")
        return bits[:, :self.width].astype(bool)

    def get(self, x: int, y: int) -> bool:
        if not (0 <= x < self.width and 0 <= y < self.height):
            return False
        return bool((int(self.words[y, x // WORD_BITS]) >> (x % WORD_BITS)) & 1)

    def popcount(self) -> int:
        return int(np.unpackbits(self.words.astype("<u8").view(np.uint8)).sum())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PackedBitmap):
            return NotImplemented
        return (self.width == other.width and self.height == other.height
                and np.array_equal(self.words, other.words))

    def __repr__(self) -> str:
        return f"PackedBitmap({self.width}x{self.height})"


def _shift_words(words: np.ndarray, dx: int, dy: int) -> np.ndarray:
    """Array whose pixel (x, y) is the input pixel (x - dx, y - dy), zero filled."""
    h, nw = words.shape
    out = np.zeros_like(words)
    if abs(dy) >= h or abs(dx) >= nw * WORD_BITS:
        return out
    # vertical
    if dy > 0:
        src = words[:h - dy]
        rows = slice(dy, h)
    elif dy < 0:
        src = words[-dy:]
        rows = slice(0, h + dy)
    else:
        src = words
        rows = slice(0, h)
    q, r = divmod(abs(dx), WORD_BITS)
    rr = np.uint64(r)
    lr = np.uint64(WORD_BITS - r)
    tgt = out[rows]
    if dx >= 0:
        # moves toward higher x: higher bits / higher word index
        if r == 0:
            tgt[:, q:] = src[:, :nw - q]
        else:
            tgt[:, q:] = src[:, :nw - q] << rr
            tgt[:, q + 1:] |= src[:, :nw - q - 1] >> lr
    else:
        if r == 0:
            tgt[:, :nw - q] = src[:, q:]
        else:
            tgt[:, :nw - q] = src[:, q:] >> rr
            tgt[:, :nw - q - 1] |= src[:, q + 1:] << lr
    return out


def blit_shift(dst: PackedBitmap, src: PackedBitmap, dx: int, dy: int, op: BoolOp,
               counter: BlitCounter | None = None) -> None:
    """``dst(x, y) := op(dst(x, y), src(x - dx, y - dy))``; outside reads are 0.

    `src` may be `dst`; the source is read as a snapshot.
    """
    if (dst.width, dst.height) != (src.width, src.height):
        raise ValueError("blit between bitmaps of different size")
    shifted = _shift_words(src.words, dx, dy)
    dst.words[:] = op(dst.words, shifted)
    dst.clear_padding()
    if counter is not None:
        counter.record(op.value, dx, dy)


def shifted(src: PackedBitmap, dx: int, dy: int, counter: BlitCounter | None = None) -> PackedBitmap:
    """Translated copy (plain shift, zero filled)."""
    out = PackedBitmap(src.width, src.height, _shift_words(src.words, dx, dy))
    out.clear_padding()
    if counter is not None:
        counter.record("shift", dx, dy)
    return out


def pad(b: PackedBitmap, left: int, bottom: int, right: int, top: int) -> PackedBitmap:
    out = PackedBitmap(b.width + left + right, b.height + bottom + top)
    big = np.zeros_like(out.words)
    big[bottom:bottom + b.height, :b.row_words] = b.words
    out.words[:] = _shift_words(big, left, 0)
    out.clear_padding()
    return out


def crop(b: PackedBitmap, x0: int, y0: int, width: int, height: int) -> PackedBitmap:
    moved = _shift_words(b.words, -x0, -y0)
    out = PackedBitmap(width, height)
    h = min(height, b.height)
    nw = min(out.row_words, b.row_words)
    out.words[:h, :nw] = moved[:h, :nw]
    out.clear_padding()
    return out


# -- morphology --------------------------------------------------------------

def brute_force_morph(image: PackedBitmap, se: "StructuringElement", kind: str,
                      counter: BlitCounter | None = None) -> PackedBitmap:
    """One shifted AND (erosion) or OR (dilation) per structuring-element pixel.

    Erosion: ``out(p) = AND_{b in se} image(p + b)``.
    Dilation: ``out(p) = OR_{b in se} image(p - b)``.
    Opening and closing compose the two; closing runs on a canvas padded by
    the mask size so the intermediate dilation is not clipped.
    """
    offsets = se.offsets()
    if not offsets:
        raise ValueError("empty structuring element")
    if kind == "erode":
        out = PackedBitmap.ones(image.width, image.height)
        for bx, by in offsets:
            blit_shift(out, image, -bx, -by, BoolOp.AND, counter)
        return out
    if kind == "dilate":
        out = PackedBitmap(image.width, image.height)
        for bx, by in offsets:
            blit_shift(out, image, bx, by, BoolOp.OR, counter)
        return out
    if kind == "open":
        return brute_force_morph(brute_force_morph(image, se, "erode", counter), se, "dilate", counter)
    if kind == "close":
        mw, mh = se.mask.width, se.mask.height
        big = pad(image, mw, mh, mw, mh)
        big = brute_force_morph(brute_force_morph(big, se, "dilate", counter), se, "erode", counter)
        return crop(big, mw, mh, image.width, image.height)
    raise ValueError(f"unknown morphology kind {kind!r}")


def window_pass(image: PackedBitmap, length: int, lead: int, axis: int, op: BoolOp,
                centering: str = "pre-shift", counter: BlitCounter | None = None) -> PackedBitmap:
    """Combine ``image`` over a segment window by exponential doubling.

    Returns ``out(p) = op over k in [-lead, length-1-lead] of image(p + k*e)``
    where ``e`` is the unit vector of `axis` (0 = x, 1 = y).
    """
    if length < 1:
        raise ValueError("segment length must be >= 1")
    if length == 1 and lead == 0:
        return image.copy()
    if op is not BoolOp.AND:
        # the zero-filled window is only exact inside the canvas for AND;
        # give OR room for its off-canvas values, then crop
        m = length - 1
        big = pad(image, m, 0, m, 0) if axis == 0 else pad(image, 0, m, 0, m)
        out = _window(big, length, lead, axis, op, centering, counter)
        return crop(out, m, 0, image.width, image.height) if axis == 0 \
            else crop(out, 0, m, image.width, image.height)
    return _window(image, length, lead, axis, op, centering, counter)


def _window(image: PackedBitmap, length: int, lead: int, axis: int, op: BoolOp,
            centering: str, counter: BlitCounter | None) -> PackedBitmap:
    def step(d: int) -> tuple[int, int]:
        return (d, 0) if axis == 0 else (0, d)

    work = image.copy()
    width = 1
    if centering == "pre-shift":
        # window [0, length) anchored at p, built in place; centred by one shift
        while 2 * width < length:
            blit_shift(work, work, *step(-width), op, counter)
            width *= 2
        if width < length:
            blit_shift(work, work, *step(-(length - width)), op, counter)
        if lead == 0:
            return work
        return shifted(work, *step(lead), counter=counter)
    if centering == "border-friendly":
        # window [0, width) with width < length <= 2*width, then two offset
        # applications into a fresh accumulator; no shift of the input
        while 2 * width < length:
            blit_shift(work, work, *step(-width), op, counter)
            width *= 2
        if op is BoolOp.AND:
            acc = PackedBitmap.ones(image.width, image.height)
        else:
            acc = PackedBitmap(image.width, image.height)
        blit_shift(acc, work, *step(lead), op, counter)
        blit_shift(acc, work, *step(lead - (length - width)), op, counter)
        return acc
    raise ValueError(f"unknown centering {centering!r}")


def _rect_pass(image: PackedBitmap, u: int, v: int, kind: str, centering: str,
               counter: BlitCounter | None) -> PackedBitmap:
    if kind == "erode":
        op, lead_x, lead_y = BoolOp.AND, u // 2, v // 2
    else:
        op, lead_x, lead_y = BoolOp.OR, u - 1 - u // 2, v - 1 - v // 2
    out = image
    if u > 1:
        out = window_pass(out, u, lead_x, 0, op, centering, counter)
    if v > 1:
        out = window_pass(out, v, lead_y, 1, op, centering, counter)
    return out if out is not image else image.copy()


def bitblit_rect_morph(image: PackedBitmap, u: int, v: int, kind: str,
                       centering: str = "pre-shift",
                       counter: BlitCounter | None = None) -> PackedBitmap:
    """Morphology with a ``u x v`` rectangle, origin ``(u//2, v//2)``.

    Closing is evaluated on a canvas padded by the mask size so the
    intermediate dilation is not clipped, then cropped back.
    """
    if u < 1 or v < 1:
        raise ValueError("mask size must be >= 1")
    if kind in ("erode", "dilate"):
        return _rect_pass(image, u, v, kind, centering, counter)
    if kind == "open":
        eroded = _rect_pass(image, u, v, "erode", centering, counter)
        return _rect_pass(eroded, u, v, "dilate", centering, counter)
    if kind == "close":
        big = pad(image, u, v, u, v)
        dil = _rect_pass(big, u, v, "dilate", centering, counter)
        ero = _rect_pass(dil, u, v, "erode", centering, counter)
        return crop(ero, u, v, image.width, image.height)
    raise ValueError(f"unknown morphology kind {kind!r}")
