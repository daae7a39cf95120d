#!/usr/bin/env python3
"""Print counts of every kind for a sweep of small lattices, next to the closed forms.

    python scripts/count_table.py [--max-n 4] [--jobs 1] [--csv out.csv]
"""

import argparse
import csv
import sys
import time

from latmodel import lattice as L
from latmodel.enumeration import KINDS, EnumerationRequest, expected_count, family_of, run


def lattices(max_n: int):
    for n in range(max_n + 1):
        yield L.chain(n)
    for n in range(1, max_n + 1):
        yield L.grid(n, 1)
    for n in range(1, max_n + 1):
        yield L.diamond(n)
    yield L.pentagon()


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=3)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--csv", help="also write the table here")
    args = ap.parse_args(argv)

    rows = []
    header = ["lattice", "arrows"] + [f"{k}" for k in KINDS] + ["seconds"]
    print(" ".join(f"{h:>14}" for h in header))
    for lat in lattices(args.max_n):
        fam = family_of(lat)
        t0 = time.perf_counter()
        cells = []
        for kind in KINDS:
            got = sum(1 for _ in run(EnumerationRequest(lat, kind), jobs=args.jobs))
            exp = expected_count(*fam, kind) if fam else None
            cell = str(got) if exp is None else f"{got}{'' if exp == got else f'!={exp}'}"
            cells.append(cell)
        row = [lat.name, str(lat.num_arrows)] + cells + [f"{time.perf_counter() - t0:.2f}"]
        rows.append(row)
        print(" ".join(f"{c:>14}" for c in row))
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            csv.writer(fh).writerows([header] + rows)
    # a cell containing "!=" disagrees with its closed form
    return 1 if any("!=" in c for r in rows for c in r) else 0


if __name__ == "__main__":
    sys.exit(main())
