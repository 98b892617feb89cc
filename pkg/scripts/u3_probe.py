"""U^2 and U^3 of the uniform part chi_u for the built-in family on a small grid.

U^3 costs O(Ñ^4 log Ñ), so this stays at Ñ in the low hundreds.
"""
import argparse
import json
import time

from gaussgowers.decomp import decompose, u3_probe
from gaussgowers.grid import PhiParams, make_grid
from gaussgowers.multfn import builtin_family


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=60)
    ap.add_argument("--eps", type=float, default=0.9)
    ap.add_argument("--relaxed", action=argparse.BooleanOptionalAction, default=True,
                    help="grid size = next prime above N (default on; U^3 is too slow on the 100N grid)")
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--out", default="u3_probe.json")
    args = ap.parse_args()
    grid = make_grid(1, args.n, args.relaxed)
    PhiParams(1, 1, args.eps).check(grid.n_tilde)
    rows = []
    for chi in builtin_family(args.seed):
        t0 = time.perf_counter()
        rep = decompose(chi, grid, args.eps, 1, 1)
        u3 = u3_probe(rep)
        rows.append({"chi": rep.label, "u2_of_u": rep.u2_of_u, "u3_of_u": u3, "seconds": time.perf_counter() - t0})
        print(f"{rep.label:28s} U2={rep.u2_of_u:.4f}  U3={u3:.4f}")
    with open(args.out, "w") as fh:
        json.dump({"n": grid.n, "n_tilde": grid.n_tilde, "eps": args.eps, "rows": rows}, fh, indent=2)


if __name__ == "__main__":
    main()
