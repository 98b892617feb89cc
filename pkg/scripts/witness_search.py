"""Monochromatic solutions of x^2 - y^2 = n^2 for many colorings, plus search statistics."""
import argparse
import json
import time

from gaussgowers.ramsey import X2_Y2_N2, Coloring, QuadraticForm, cell_sizes, search_monochromatic, verify_witness


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--box", type=int, default=30)
    ap.add_argument("--form", default=None, help="a,b,c,d,e,f; defaults to x^2 - y^2 - n^2")
    ap.add_argument("--random", type=int, default=20, help="number of seeded random colorings per cell count")
    ap.add_argument("--out", default="witnesses.json")
    args = ap.parse_args()
    form = QuadraticForm.parse(args.form) if args.form else X2_Y2_N2
    specs = ["constant", "parity", "residue:2+i", "residue:3", "sector:4", "sector:8", "band:10:3", "band:5:4"]
    specs += [f"random:{k}:{s}" for k in (2, 3, 4) for s in range(args.random)]
    rows = []
    for spec in specs:
        col = Coloring.parse(spec)
        t0 = time.perf_counter()
        w = search_monochromatic(col, args.box, form, require_distinct_nonzero=True)
        dt = time.perf_counter() - t0
        ok = w is not None and verify_witness(w, col, form, require_nonzero_n=True)
        rows.append({"coloring": spec, "witness": None if w is None else w.to_json(cell_sizes(col, args.box)),
                     "verified": ok, "seconds": dt})
        print(f"{spec:14s} " + (f"x={w.x} y={w.y} n={w.n} ({w.source}) " if w else "none ") + f"{dt * 1000:.1f} ms")
    with open(args.out, "w") as fh:
        json.dump(rows, fh, indent=2)
    print(f"{sum(r['verified'] for r in rows)}/{len(rows)} colorings have a verified witness")


if __name__ == "__main__":
    main()
