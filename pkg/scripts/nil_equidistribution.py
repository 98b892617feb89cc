"""Equidistribution defects of Heisenberg orbits as N grows, generic versus rational data."""
import argparse
import json
import math

import numpy as np

from gaussgowers.io import svg_heatmap, svg_lines
from gaussgowers.nil import HorizontalExp, NilElement, NilGroup, PolySeq2, VerticalNilchar, equid_defect, orbit


def sequences(rng):
    grp = NilGroup.heisenberg()
    generic = PolySeq2(grp, NilElement((0.0, 0.0), 0.0), NilElement((math.sqrt(2), math.sqrt(3)), 0.0),
                       NilElement((math.pi / 4, math.e / 3), rng.random()))
    rational = PolySeq2(grp, NilElement((0.0, 0.0), 0.0), NilElement((0.5, math.sqrt(3)), 0.0),
                        NilElement((0.25, math.e / 3), 0.0))
    return grp, {"generic": generic, "rational_first_coordinate": rational}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ns", default="25,50,100,200,400")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default="nil_equid")
    args = ap.parse_args()
    ns = [int(v) for v in args.ns.split(",")]
    _, seqs = sequences(np.random.default_rng(args.seed))
    tests = {"e(x1)": HorizontalExp((1, 0)), "e(4 x1)": HorizontalExp((4, 0)), "vertical k=1": VerticalNilchar(1)}
    rows, series = [], {}
    for name, seq in seqs.items():
        for tname, fn in tests.items():
            vals = []
            for n in ns:
                d = equid_defect(orbit(seq, n), fn)
                vals.append(d)
                rows.append({"sequence": name, "test": tname, "n": n, "defect": d})
            series[f"{name}: {tname}"] = vals
            print(f"{name:26s} {tname:13s} " + "  ".join(f"{v:.2e}" for v in vals))
        pts = orbit(seq, 100)
        hist, _, _ = np.histogram2d(pts[..., 0].ravel(), pts[..., 1].ravel(), bins=40, range=[[0, 1], [0, 1]])
        svg_heatmap(hist, f"{args.out}_{name}_horizontal.svg", cell=8, title=f"{name}: (x1, x2) density")
    with open(f"{args.out}.json", "w") as fh:
        json.dump(rows, fh, indent=2)
    svg_lines(ns, series, f"{args.out}.svg", width=640, title="defect vs N")


if __name__ == "__main__":
    main()
