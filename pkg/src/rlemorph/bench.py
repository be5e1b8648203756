"""Timing harness: engines x mask sizes x images, median-of-N, CSV output."""
from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from . import rle
from .arbitrary import morph_se
from .bitblit import bitblit_rect_morph, brute_force_morph
from .morph2d import EngineChoice, auto_rect_morph, rect_morph
from .rle import RleImage
from .structuring import make_circle_se, make_rect_se

ENGINES = ("rle-mixed", "rle-transpose", "bitblit", "brute-force", "auto")
CSV_COLUMNS = ("engine", "op", "mask_w", "mask_h", "image_w", "image_h", "runs_in", "runs_out", "nanos")


@dataclass
class BenchRecord:
    engine: str
    op: str
    mask_w: int
    mask_h: int
    image_w: int
    image_h: int
    runs_in: int
    runs_out: int
    nanos: int
    error: str = field(default="", compare=False)

    def row(self) -> list:
        return [getattr(self, c) for c in CSV_COLUMNS]


@dataclass(frozen=True)
class BenchConfig:
    repeats: int = 5
    warmup: int = 1
    verify: bool = True
    threshold: int = 5     # auto engine switch-over


def median_nanos(fn: Callable[[], object], repeats: int = 5, warmup: int = 1) -> tuple[int, object]:
    """Median wall time of `fn` in nanoseconds, and its last result."""
    out = None
    for _ in range(warmup):
        out = fn()
    times = []
    for _ in range(repeats):
        t = time.perf_counter_ns()
        out = fn()
        times.append(time.perf_counter_ns() - t)
    return max(1, int(np.median(times))), out


def _rect_job(engine: str, image: RleImage, packed, u: int, v: int, op: str, cfg: BenchConfig):
    """Callable producing an `RleImage` or `PackedBitmap` for one rectangle cell."""
    if engine == "rle-mixed":
        return lambda: rect_morph(image, u, v, op, "mixed-within-between")
    if engine == "rle-transpose":
        return lambda: rect_morph(image, u, v, op, "transpose-within-line")
    if engine == "bitblit":
        return lambda: bitblit_rect_morph(packed, u, v, op)
    if engine == "brute-force":
        se = make_rect_se(u, v)
        return lambda: brute_force_morph(packed, se, op)
    if engine == "auto":
        # input and output are run-length; any conversion is inside the timing
        choice = EngineChoice("auto", cfg.threshold)
        return lambda: auto_rect_morph(image, u, v, op, choice)[0]
    raise ValueError(f"unknown engine {engine!r}")


def _circle_job(engine: str, image: RleImage, packed, r: int, op: str, cfg: BenchConfig):
    se = make_circle_se(r)
    if engine in ("rle-mixed", "rle-transpose"):
        return lambda: morph_se(image, se, op, "rle")
    if engine == "bitblit":
        return lambda: morph_se(packed, se, op, "bitblit")
    if engine == "brute-force":
        return lambda: brute_force_morph(packed, se, op)
    if engine == "auto":
        if 2 * r + 1 <= cfg.threshold:
            return lambda: rle.from_bitmap(morph_se(rle.to_bitmap(image), se, op, "bitblit"))
        return lambda: morph_se(image, se, op, "rle")
    raise ValueError(f"unknown engine {engine!r}")


def _as_rle(result) -> RleImage:
    return result if isinstance(result, RleImage) else rle.from_bitmap(result)


def bench_run(corpus: Iterable[RleImage], engines: Iterable[str], masks: Iterable[int | tuple[int, int]],
              op: str, shape: str = "rect", config: BenchConfig = BenchConfig()) -> list[BenchRecord]:
    """One record per (image, engine, mask).

    `masks` are side lengths or ``(u, v)`` pairs for rectangles, radii for
    circles (recorded as ``2r+1`` square).  With ``config.verify`` every
    engine's output in a cell is compared with the first engine's; a
    mismatch or an exception yields an error row with ``runs_out = nanos = -1``.
    """
    engines = list(engines)
    masks = list(masks)
    records: list[BenchRecord] = []
    for image in corpus:
        packed = rle.to_bitmap(image)
        for mask in masks:
            if shape == "rect":
                u, v = (mask, mask) if isinstance(mask, int) else mask
                mw, mh = u, v
            elif shape == "circle":
                mw = mh = 2 * int(mask) + 1
            else:
                raise ValueError(f"unknown mask shape {shape!r}")
            reference = None
            for engine in engines:
                rec = BenchRecord(engine, op, mw, mh, image.width, image.height, image.nruns, -1, -1)
                try:
                    job = (_rect_job(engine, image, packed, u, v, op, config) if shape == "rect"
                           else _circle_job(engine, image, packed, int(mask), op, config))
                    nanos, result = median_nanos(job, config.repeats, config.warmup)
                    out = _as_rle(result)
                    if config.verify:
                        if reference is None:
                            reference = out
                        elif out != reference:
                            raise AssertionError(f"{engine} disagrees with {engines[0]}")
                    rec.runs_out = out.nruns
                    rec.nanos = nanos
                except Exception as exc:  # recorded, not raised: one bad cell must not end a sweep
                    rec.error = f"{type(exc).__name__}: {exc}"
                records.append(rec)
    return records


def write_csv(records: Iterable[BenchRecord], stream: io.TextIOBase | None = None) -> str:
    buf = stream or io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        w.writerow(r.row())
    return buf.getvalue() if stream is None else ""


def fit_exponent(xs: Iterable[float], ys: Iterable[float]) -> float:
    """Least-squares slope of ``log y`` against ``log x``."""
    lx = np.log(np.asarray(list(xs), dtype=float))
    ly = np.log(np.asarray(list(ys), dtype=float))
    return float(np.polyfit(lx, ly, 1)[0])


def crossover(records: Iterable[BenchRecord], fast: str, slow: str) -> int | None:
    """Smallest mask side from which `fast` beats `slow` at every larger measured size."""
    by = {}
    for r in records:
        if r.nanos > 0:
            cell = by.setdefault(r.mask_w, {})
            cell[r.engine] = cell.get(r.engine, 0) + r.nanos   # summed over images
    sizes = sorted(s for s, d in by.items() if fast in d and slow in d)
    best = None
    for s in reversed(sizes):
        if by[s][fast] < by[s][slow]:
            best = s
        else:
            break
    return best
