#!/usr/bin/env python3
"""Square-mask timing sweep on synthetic pages; prints where rle-mixed overtakes bitblit."""
import argparse
import sys

import numpy as np

from rlemorph.bench import BenchConfig, bench_run, crossover, write_csv
from rlemorph.synth import PageConfig, document_page


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--masks", default="1,2,3,4,5,7,9,13,17,25,33,49")
    ap.add_argument("--engines", default="rle-mixed,rle-transpose,bitblit,auto")
    ap.add_argument("--op", default="open")
    ap.add_argument("--pages", type=int, default=2)
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--csv", help="write records here (default stdout)")
    a = ap.parse_args()
    pages = [document_page(np.random.default_rng(s), PageConfig(columns=1 + s % 2)) for s in range(a.pages)]
    recs = bench_run(pages, a.engines.split(","), [int(m) for m in a.masks.split(",")], a.op,
                     config=BenchConfig(repeats=a.repeats))
    if a.csv:
        with open(a.csv, "w", newline="") as f:
            write_csv(recs, f)
    else:
        sys.stdout.write(write_csv(recs))
    print(f"crossover (rle-mixed beats bitblit from): {crossover(recs, 'rle-mixed', 'bitblit')}",
          file=sys.stderr)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
