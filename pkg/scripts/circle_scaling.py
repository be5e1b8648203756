#!/usr/bin/env python3
"""Circle-mask timing against radius for brute force, doubling bitblit and run-length engines."""
import argparse

import numpy as np

from rlemorph import rle
from rlemorph.arbitrary import morph_se
from rlemorph.bench import fit_exponent, median_nanos
from rlemorph.bitblit import brute_force_morph
from rlemorph.structuring import make_circle_se
from rlemorph.synth import PageConfig, document_page


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--rmin", type=int, default=2)
    ap.add_argument("--rmax", type=int, default=16)
    ap.add_argument("--op", default="dilate", choices=("erode", "dilate"))
    ap.add_argument("--dpi600", action="store_true", help="double-size page with double-size glyphs")
    a = ap.parse_args()
    cfg = PageConfig()
    if a.dpi600:
        cfg = PageConfig(width=5100, height=6600, margin=300, glyph_w=(24, 40), glyph_h=(36, 52),
                         letter_gap=6, word_gap=(24, 40), line_gap=28)
    page = document_page(np.random.default_rng(0), cfg)
    packed = rle.to_bitmap(page)
    rs = list(range(a.rmin, a.rmax + 1))
    cols = {"brute": [], "bitblit": [], "rle": []}
    print("r,brute_ms,bitblit_ms,rle_ms,runs_out")
    for r in rs:
        se = make_circle_se(r)
        tb, _ = median_nanos(lambda: brute_force_morph(packed, se, a.op))
        td, _ = median_nanos(lambda: morph_se(packed, se, a.op, "bitblit"))
        tr, out = median_nanos(lambda: morph_se(page, se, a.op, "rle"))
        for k, t in zip(cols, (tb, td, tr)):
            cols[k].append(t)
        print(f"{r},{tb / 1e6:.2f},{td / 1e6:.2f},{tr / 1e6:.2f},{out.nruns}")
    for k, ts in cols.items():
        print(f"# {k}: fitted exponent {fit_exponent(rs, ts):.2f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
