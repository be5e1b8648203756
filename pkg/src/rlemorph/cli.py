"""Command-line front end.

Images are read and written as PBM or RLE text, chosen by file extension
(``.rle`` is RLE text, anything else PBM).  Angles are given in degrees.
Exit status: 0 ok, 1 usage error, 2 bad input data.
"""
from __future__ import annotations

import argparse
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import rle
from .analysis import component_stats, label_components, runlength_histograms
from .arbitrary import line_angle_morph, morph_se
from .bench import ENGINES, BenchConfig, bench_run, write_csv
from .bitblit import brute_force_morph
from .geometry import rotate, scale, skew_h
from .io_formats import FormatError, pbm_read, read_image, write_image
from .layout import LayoutConfig, layout_blocks
from .morph2d import EngineChoice, auto_rect_morph, rect_morph
from .rle import RleImage
from .structuring import StructuringElement, make_circle_se, make_rect_se, skew_line_se
from .synth import PageConfig, document_page
from .transpose import transpose


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


# -- structuring element specs -------------------------------------------------

def parse_se(spec: str):
    """``rect:UxV``, ``circle:R``, ``line:R@DEGREES`` or ``file:PATH@CX,CY``.

    Returns ``("rect", (u, v))``, ``("line", (r, radians))`` or ``("se", StructuringElement)``.
    """
    kind, _, arg = spec.partition(":")
    try:
        if kind == "rect":
            u, v = (int(x) for x in arg.lower().split("x"))
            if u < 1 or v < 1:
                raise ValueError
            return "rect", (u, v)
        if kind == "circle":
            return "se", make_circle_se(int(arg))
        if kind == "line":
            r, deg = arg.split("@")
            return "line", (int(r), math.radians(float(deg)))
        if kind == "file":
            path, origin = arg.rsplit("@", 1)
            cx, cy = (int(x) for x in origin.split(","))
            mask = rle.from_bitmap(pbm_read(Path(path).read_bytes()))
            return "se", StructuringElement(mask, (cx, cy))
    except FormatError:
        raise
    except (ValueError, TypeError) as exc:
        raise UsageError(f"bad --se {spec!r}: {exc or 'malformed'}") from None
    raise UsageError(f"bad --se {spec!r}: unknown shape {kind!r}")


def _fraction(text: str):
    from .geometry import as_fraction
    try:
        return as_fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


# -- subcommands -------------------------------------------------------------

def cmd_convert(a) -> int:
    write_image(a.output, read_image(a.input), a.pbm_flavor)
    return 0


def run_morph(image: RleImage, op: str, se_spec: str, engine: str = "auto",
              strategy: str = "mixed-within-between", threshold: int = 5) -> tuple[RleImage, str]:
    """Library entry point behind ``morph``; returns the result and the engine used."""
    kind, se = parse_se(se_spec)
    if kind == "rect":
        u, v = se
        if engine == "brute":
            return rle.from_bitmap(brute_force_morph(rle.to_bitmap(image), make_rect_se(u, v), op)), "brute"
        if engine == "rle":
            return rect_morph(image, u, v, op, strategy), "rle"
        return auto_rect_morph(image, u, v, op, EngineChoice(engine, threshold), strategy)
    if kind == "line":
        r, angle = se
        if op not in ("erode", "dilate"):
            raise UsageError("line masks support erode and dilate")
        if engine == "brute":
            return rle.from_bitmap(brute_force_morph(rle.to_bitmap(image), skew_line_se(r, angle), op)), "brute"
        if engine == "bitblit":
            return rle.from_bitmap(line_angle_morph(rle.to_bitmap(image), r, angle, op)), "bitblit"
        return line_angle_morph(image, r, angle, op), "rle"
    if engine == "brute":
        return rle.from_bitmap(morph_se(rle.to_bitmap(image), se, op, "brute")), "brute"
    if engine == "bitblit" or (engine == "auto" and max(se.mask.width, se.mask.height) <= threshold):
        return rle.from_bitmap(morph_se(rle.to_bitmap(image), se, op, "bitblit")), "bitblit"
    return morph_se(image, se, op, "rle"), "rle"


def cmd_morph(a) -> int:
    image = read_image(a.input)
    out, used = run_morph(image, a.op, a.se, a.engine, a.strategy, a.threshold)
    print(f"engine: {used}", file=sys.stderr)
    write_image(a.output, out, a.pbm_flavor)
    return 0


def cmd_transpose(a) -> int:
    write_image(a.output, transpose(read_image(a.input)), a.pbm_flavor)
    return 0


def cmd_rotate(a) -> int:
    angle = math.radians(a.angle)
    if abs(angle) > math.pi / 4 + 1e-12:
        raise UsageError("--angle must lie in [-45, 45] degrees")
    write_image(a.output, rotate(read_image(a.input), angle), a.pbm_flavor)
    return 0


def cmd_scale(a) -> int:
    fy = a.fx if a.fy is None else a.fy
    write_image(a.output, scale(read_image(a.input), a.fx, fy), a.pbm_flavor)
    return 0


def cmd_skew(a) -> int:
    write_image(a.output, skew_h(read_image(a.input), a.slope), a.pbm_flavor)
    return 0


def cmd_components(a) -> int:
    image = read_image(a.input)
    lm = label_components(image, a.connectivity)
    for c in component_stats(image, lm):
        x0, y0, x1, y1 = c.box
        if a.stats:
            cx, cy = c.centroid
            print(f"{x0} {y0} {x1} {y1} {c.area} {cx:.6g} {cy:.6g}")
        else:
            print(f"{x0} {y0} {x1} {y1}")
    return 0


def cmd_stats(a) -> int:
    image = read_image(a.input)
    for length, count in runlength_histograms(image, a.axis, a.color).items():
        print(f"{length} {count}")
    return 0


def _layout_one(args: tuple[str, LayoutConfig]) -> list[tuple[int, int, int, int]]:
    path, cfg = args
    return layout_blocks(read_image(path), cfg)


def cmd_layout(a) -> int:
    cfg = LayoutConfig(engine=a.engine, min_area=a.min_area, percentile=a.percentile)
    jobs = [(p, cfg) for p in a.inputs]
    if a.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(a.jobs) as pool:
            results = list(pool.map(_layout_one, jobs))
    else:
        results = [_layout_one(j) for j in jobs]
    for path, boxes in zip(a.inputs, results):
        if len(a.inputs) > 1:
            print(f"# {path}")
        for x0, y0, x1, y1 in boxes:
            print(f"{x0} {y0} {x1} {y1}")
    if a.overlay:
        if len(a.inputs) != 1:
            raise UsageError("--overlay needs exactly one input")
        image = read_image(a.inputs[0])
        arr = image.to_array()
        for x0, y0, x1, y1 in results[0]:
            arr[y0, x0:x1] = arr[y1 - 1, x0:x1] = True
            arr[y0:y1, x0] = arr[y0:y1, x1 - 1] = True
        write_image(a.overlay, RleImage.from_array(arr))
    return 0


def cmd_bench(a) -> int:
    masks = [int(m) for m in a.masks.split(",")]
    engines = a.engines.split(",")
    unknown = [e for e in engines if e not in ENGINES]
    if unknown:
        raise UsageError(f"unknown engines {unknown}; choose from {', '.join(ENGINES)}")
    if a.inputs:
        corpus = [read_image(p) for p in a.inputs]
    else:
        rng = np.random.default_rng(a.seed)
        corpus = [document_page(rng, PageConfig(width=a.width, height=a.height)) for _ in range(a.pages)]
    cfg = BenchConfig(repeats=a.repeats)
    records = bench_run(corpus, engines, masks, a.op, a.shape, cfg)
    if a.csv:
        with open(a.csv, "w", newline="") as fh:
            write_csv(records, fh)
    else:
        sys.stdout.write(write_csv(records))
    for r in records:
        if r.error:
            print(f"error: {r.engine} {r.mask_w}x{r.mask_h}: {r.error}", file=sys.stderr)
    return 2 if any(r.error for r in records) else 0


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="rlemorph", description="Run-length binary image morphology.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def io_cmd(name: str, help: str):
        s = sub.add_parser(name, help=help)
        s.add_argument("input")
        s.add_argument("output")
        s.add_argument("--pbm-flavor", choices=("P4", "P1"), default="P4")
        return s

    io_cmd("convert", "convert between PBM and RLE text").set_defaults(func=cmd_convert)

    s = io_cmd("morph", "erode/dilate/open/close")
    s.add_argument("--op", required=True, choices=("erode", "dilate", "open", "close"))
    s.add_argument("--se", required=True, help="rect:UxV | circle:R | line:R@DEGREES | file:PATH@CX,CY")
    s.add_argument("--engine", default="auto", choices=("auto", "rle", "bitblit", "brute"))
    s.add_argument("--strategy", default="mixed-within-between",
                   choices=("mixed-within-between", "transpose-within-line", "brute-force"))
    s.add_argument("--threshold", type=int, default=5, help="auto: bitblit when max(u, v) <= this")
    s.set_defaults(func=cmd_morph)

    io_cmd("transpose", "exchange axes").set_defaults(func=cmd_transpose)

    s = io_cmd("rotate", "rotate by three shears")
    s.add_argument("--angle", type=float, required=True, help="degrees, counter-clockwise, |angle| <= 45")
    s.set_defaults(func=cmd_rotate)

    s = io_cmd("scale", "rescale coordinates")
    s.add_argument("--fx", type=_fraction, required=True, help="e.g. 2 or 1/2")
    s.add_argument("--fy", type=_fraction, default=None, help="defaults to --fx")
    s.set_defaults(func=cmd_scale)

    s = io_cmd("skew", "horizontal skew")
    s.add_argument("--slope", type=_fraction, required=True)
    s.set_defaults(func=cmd_skew)

    s = sub.add_parser("components", help="connected component boxes")
    s.add_argument("input")
    s.add_argument("--connectivity", choices=("4", "8"), default="8")
    s.add_argument("--stats", action="store_true", help="also print area and centroid")
    s.set_defaults(func=cmd_components)

    s = sub.add_parser("stats", help="run-length histograms")
    s.add_argument("input")
    s.add_argument("--axis", choices=("horizontal", "vertical"), default="horizontal")
    s.add_argument("--color", choices=("black", "white"), default="black")
    s.set_defaults(func=cmd_stats)

    s = sub.add_parser("layout", help="text block boxes")
    s.add_argument("inputs", nargs="+")
    s.add_argument("--engine", choices=("auto", "rle", "bitblit"), default="auto")
    s.add_argument("--min-area", type=int, default=16)
    s.add_argument("--percentile", type=float, default=75.0)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--overlay", help="write the page with box outlines here")
    s.set_defaults(func=cmd_layout)

    s = sub.add_parser("bench", help="timing sweep, CSV output")
    s.add_argument("inputs", nargs="*", help="images; default: synthetic pages")
    s.add_argument("--masks", default="1,3,5,9,17,33")
    s.add_argument("--engines", default="rle-mixed,bitblit")
    s.add_argument("--op", choices=("erode", "dilate", "open", "close"), default="open")
    s.add_argument("--shape", choices=("rect", "circle"), default="rect")
    s.add_argument("--csv")
    s.add_argument("--repeats", type=int, default=5)
    s.add_argument("--pages", type=int, default=1)
    s.add_argument("--width", type=int, default=2550)
    s.add_argument("--height", type=int, default=3300)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_bench)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:   # usage errors exit 1 (see _Parser), --help exits 0
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"rlemorph: error: {exc}", file=sys.stderr)
        return 1
    except FormatError as exc:
        print(f"rlemorph: bad input: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError, OverflowError) as exc:
        print(f"rlemorph: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
