#!/usr/bin/env python3
"""Write DOT files for a few of the standard worked examples into an output directory.

    python scripts/render_figures.py out/   # then e.g. `dot -Tpdf out/*.dot`
"""

import sys
from pathlib import Path

from latmodel import lattice as L
from latmodel.arrowsets import ArrowSet, generate_transfer, k_max, t_max
from latmodel.io import dot_export
from latmodel.lifting import downward_extension, right_lift
from latmodel.model import af_interval
from latmodel.reproduce import arrows


def figures():
    g21 = L.grid(2, 1)
    s = arrows(g21, "(1,0)>(2,0) (2,0)>(2,1)")
    yield "generated_transfer", g21, [(s, None), (generate_transfer(s), None)]

    t = arrows(g21, "(0,0)>(0,1) (1,0)>(1,1) (2,0)>(2,1)")
    yield "downward_extension", g21, [(t, None), (downward_extension(t), None)]

    g22 = L.grid(2, 2)
    w = arrows(g22, "(0,0)>(0,1) (0,1)>(0,2) (0,0)>(0,2) (1,1)>(1,2) "
                    "(2,0)>(2,1) (2,1)>(2,2) (2,0)>(2,2)")
    yield "grid22_tmax_kmax", g22, [(w, None), (t_max(w), None), (k_max(w), None)]
    yield "grid22_kmax_rlift", g22, [(right_lift(k_max(w)), None)]
    for i, m in enumerate(af_interval(w).members):
        yield f"grid22_af_{i}", g22, [(w, None), (m, None)]

    n5 = L.pentagon()
    yield "pentagon", n5, [(ArrowSet.empty(n5), None)]


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    out = Path(argv[0] if argv else "figures")
    out.mkdir(parents=True, exist_ok=True)
    for name, lat, overlays in figures():
        path = out / f"{name}.dot"
        path.write_text(dot_export(lat, overlays))
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
