"""Katai pair statistic for additive characters restricted to R_N, over a sweep of frequencies.

Frequencies congruent to (Ñ+1)/2 in both coordinates behave like a character of
Z[i]/(1+i): every odd prime is 1 modulo 1+i, so the dilates line up and the
statistic stays large.  Generic frequencies cancel.
"""
import argparse
import json

import numpy as np

from gaussgowers.grid import character, make_grid
from gaussgowers.multfn import builtin_family, family_correlation, katai_statistic


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=50)
    ap.add_argument("--k", type=int, default=30)
    ap.add_argument("--samples", type=int, default=12)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default="katai_characters.json")
    args = ap.parse_args()
    grid = make_grid(1, args.n)
    nt = grid.n_tilde
    half = (nt + 1) // 2
    rng = np.random.default_rng(args.seed)
    freqs = [(half, half), (half, 0), (0, 0)] + [tuple(int(v) for v in rng.integers(0, nt, 2))
                                                 for _ in range(args.samples)]
    family = builtin_family(args.seed)
    rows = []
    for xi in freqs:
        f = character(grid, *xi) * grid.box_mask()
        best, (p, q), _ = katai_statistic(f, 1, args.k)
        corr = family_correlation(f, family)
        rows.append({"xi": list(xi), "max_pair_corr": best, "argmax": [str(p), str(q)], "family_corr": corr})
        print(f"xi={str(xi):16s} katai={best:.4f} at ({p}, {q})  family={corr:.4f}")
    with open(args.out, "w") as fh:
        json.dump(rows, fh, indent=2)


if __name__ == "__main__":
    main()
