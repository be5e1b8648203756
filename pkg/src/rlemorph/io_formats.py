"""PBM (P4 raw, P1 plain) and a plain-text run-length format.

Files store the top row first; in memory row 0 is the bottom row, so the
codecs flip row order on the way in and out.
"""
from __future__ import annotations

from pathlib import Path

import numpy as np

from .bitblit import PackedBitmap
from .rle import MAX_COORD, RleImage, check, from_bitmap, to_bitmap

P1_LINE = 70
_WS = b" \t\n\r\v\f"


class FormatError(ValueError):
    """Malformed input; `offset` is the byte position where parsing failed."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


def _header_token(data: bytes, pos: int) -> tuple[bytes, int]:
    """Next whitespace-delimited token, skipping ``#`` comments; returns (token, end)."""
    n = len(data)
    while pos < n:
        c = data[pos:pos + 1]
        if c and c in _WS:
            pos += 1
        elif c == b"#":
            while pos < n and data[pos:pos + 1] not in (b"\n", b"\r"):
                pos += 1
        else:
            break
    start = pos
    while pos < n and data[pos:pos + 1] not in _WS and data[pos:pos + 1] != b"#":
        pos += 1
    if start == pos:
        raise FormatError("unexpected end of header", start)
    return data[start:pos], pos


def _dimension(tok: bytes, at: int) -> int:
    if not tok.isdigit():
        raise FormatError(f"bad dimension {tok!r}", at)
    v = int(tok)
    if not 1 <= v <= MAX_COORD:
        raise FormatError(f"dimension {v} outside 1..{MAX_COORD}", at)
    return v


def pbm_read(data: bytes) -> PackedBitmap:
    if data[:2] not in (b"P4", b"P1"):
        raise FormatError("bad magic, expected P4 or P1", 0)
    magic = data[:2]
    if len(data) > 2 and data[2:3] not in _WS and data[2:3] != b"#":
        raise FormatError("bad magic, expected P4 or P1", 0)
    tok, pos = _header_token(data, 2)
    width = _dimension(tok, pos - len(tok))
    tok, pos = _header_token(data, pos)
    height = _dimension(tok, pos - len(tok))
    if magic == b"P4":
        if pos >= len(data) or data[pos:pos + 1] not in _WS:
            raise FormatError("missing whitespace before raster", pos)
        pos += 1
        row_bytes = -(-width // 8)
        need = row_bytes * height
        raster = data[pos:pos + need]
        if len(raster) < need:
            raise FormatError(f"truncated raster: {len(raster)} of {need} bytes", pos + len(raster))
        bits = np.unpackbits(np.frombuffer(raster, np.uint8).reshape(height, row_bytes), axis=1)
        pixels = bits[:, :width].astype(bool)
    else:
        body = np.frombuffer(data, np.uint8, offset=pos)
        digit = (body == ord("0")) | (body == ord("1"))
        ws = np.isin(body, np.frombuffer(_WS, np.uint8))
        junk = np.flatnonzero(~(digit | ws))
        where = np.flatnonzero(digit)
        need = width * height
        if where.shape[0] < need:
            end = int(junk[0]) if junk.size else len(body)
            raise FormatError(f"truncated raster: {where.shape[0]} of {need} pixels", pos + end)
        if junk.size and junk[0] < where[need - 1]:
            raise FormatError(f"unexpected byte {bytes(body[junk[0]:junk[0] + 1])!r} in raster",
                              pos + int(junk[0]))
        pixels = (body[where[:need]] == ord("1")).reshape(height, width)
    return PackedBitmap.from_array(pixels[::-1])


def pbm_write(bitmap: PackedBitmap, flavor: str = "P4") -> bytes:
    pixels = bitmap.to_array()[::-1]
    head = f"{flavor}\n{bitmap.width} {bitmap.height}\n".encode()
    if flavor == "P4":
        return head + np.packbits(pixels, axis=1).tobytes()
    if flavor == "P1":
        digits = np.where(pixels, ord("1"), ord("0")).astype(np.uint8).tobytes()
        lines = []
        for y in range(bitmap.height):
            row = digits[y * bitmap.width:(y + 1) * bitmap.width]
            lines.extend(row[i:i + P1_LINE] for i in range(0, len(row), P1_LINE))
        return head + b"\n".join(lines) + b"\n"
    raise ValueError(f"unknown PBM flavor {flavor!r}")


# -- run-length text --------------------------------------------------------

def rle_text_emit(image: RleImage) -> str:
    check(image)
    out = [f"RLE {image.width} {image.height}\n"]
    for line in image.lines:
        parts = [str(len(line))]
        for s, e in line:
            parts.append(f"{s} {e}")
        out.append(" ".join(parts) + "\n")
    return "".join(out)


def _int_field(tok: str, at: int) -> int:
    if not tok.isdigit():
        raise FormatError(f"bad integer {tok!r}", at)
    return int(tok)


def rle_text_parse(text: str | bytes) -> RleImage:
    """Strict parser: single spaces, one line per image row, canonical runs only."""
    data = text.encode() if isinstance(text, str) else text
    try:
        text = data.decode("ascii")
    except UnicodeDecodeError as exc:
        raise FormatError("non-ASCII byte", exc.start) from None
    lines = text.split("\n")
    if not text.endswith("\n"):
        raise FormatError("missing final newline", len(data))
    lines.pop()
    head = lines[0].split(" ") if lines else []
    if len(head) != 3 or head[0] != "RLE":
        raise FormatError("expected header 'RLE <width> <height>'", 0)
    width = _dimension(head[1].encode(), 4)
    height = _dimension(head[2].encode(), 5 + len(head[1]))
    if len(lines) - 1 != height:
        raise FormatError(f"expected {height} run lines, found {len(lines) - 1}",
                          len(data) if len(lines) - 1 < height else
                          sum(len(x) + 1 for x in lines[:height + 1]))
    pos = len(lines[0]) + 1
    rows = []
    for y, line in enumerate(lines[1:]):
        fields = line.split(" ")
        count = _int_field(fields[0], pos)
        if len(fields) != 1 + 2 * count:
            raise FormatError(f"line {y}: count {count} does not match {len(fields) - 1} coordinates", pos)
        vals = [_int_field(f, pos) for f in fields[1:]]
        row = list(zip(vals[0::2], vals[1::2]))
        prev = -1
        for s, e in row:
            if s >= e:
                raise FormatError(f"line {y}: empty run ({s}, {e})", pos)
            if s <= prev:
                raise FormatError(f"line {y}: run ({s}, {e}) not after previous end {prev}", pos)
            if e > width:
                raise FormatError(f"line {y}: run ({s}, {e}) exceeds width {width}", pos)
            prev = e
        rows.append(row)
        pos += len(line) + 1
    return RleImage.from_lines(width, height, rows)


# -- files -------------------------------------------------------------------

def read_image(path: str | Path) -> RleImage:
    """Load ``.pbm`` or ``.rle`` (by extension) as a run-length image."""
    path = Path(path)
    data = path.read_bytes()
    if path.suffix.lower() == ".rle":
        return rle_text_parse(data)
    return from_bitmap(pbm_read(data))


def write_image(path: str | Path, image: RleImage, flavor: str = "P4") -> None:
    path = Path(path)
    if path.suffix.lower() == ".rle":
        path.write_text(rle_text_emit(image))
    else:
        path.write_bytes(pbm_write(to_bitmap(image), flavor))
