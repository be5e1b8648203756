#!/usr/bin/env python3
"""End-to-end layout pipeline timing, run-length engine against the forced bitblit engine."""
import argparse

import numpy as np

from rlemorph.bench import median_nanos
from rlemorph.layout import LayoutConfig, estimate_spacing, layout_blocks
from rlemorph.synth import PageConfig, document_page


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--pages", type=int, default=5)
    ap.add_argument("--repeats", type=int, default=5)
    a = ap.parse_args()
    print("page,columns,runs,inter_word,inter_line,blocks,rle_ms,bitblit_ms")
    total = {"rle": 0, "bitblit": 0}
    for s in range(a.pages):
        cols = 1 + s % 2
        page = document_page(np.random.default_rng(s), PageConfig(columns=cols))
        sp = estimate_spacing(page)
        t = {}
        for engine in total:
            cfg = LayoutConfig(engine=engine)
            t[engine], boxes = median_nanos(lambda: layout_blocks(page, cfg), a.repeats)
            total[engine] += t[engine]
        print(f"{s},{cols},{page.nruns},{sp.inter_word},{sp.inter_line},{len(boxes)},"
              f"{t['rle'] / 1e6:.1f},{t['bitblit'] / 1e6:.1f}")
    print(f"# speedup rle over bitblit: {total['bitblit'] / total['rle']:.2f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
