"""Certificates from the horizontal-character search, and the sub-box correlation they imply."""
import argparse
import json
import math

import numpy as np

from gaussgowers.nil import NilElement, NilGroup, PolySeq2, inverse_leibman_check, leibman_search


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=2000)
    ap.add_argument("--d", type=int, default=5)
    ap.add_argument("--trials", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default="leibman_demo.json")
    args = ap.parse_args()
    grp = NilGroup.heisenberg()
    rng = np.random.default_rng(args.seed)
    rows = []
    for t in range(args.trials):
        # plant a near-rational relation a*x1 + b*x2 ~ integer + small/N in each step
        k = rng.integers(-2, 3, size=2)
        if not k.any():
            k[0] = 1
        steps = []
        for _ in range(2):
            x = rng.random(2)
            drift = float(k @ x)
            x = x + (round(drift) - drift + rng.uniform(-1, 1) / args.n) * k / float(k @ k)
            steps.append(NilElement(tuple(x), rng.random()))
        generic = t % 2 == 1
        if generic:
            steps = [NilElement((math.sqrt(2) * (t + 1), math.sqrt(3)), 0.0),
                     NilElement((math.pi, math.e * (t + 1)), 0.0)]
        seq = PolySeq2(grp, NilElement(tuple(rng.random(2)), rng.random()), steps[0], steps[1])
        found = leibman_search(seq, args.n, args.d)
        row = {"planted": None if generic else k.tolist(), "certificate": None}
        if found:
            eta, val = found
            chk = inverse_leibman_check(seq, eta, args.d, args.n, args.n)
            row.update(certificate=list(eta.k), smoothness=val, correlation=chk.correlation, bound=chk.bound)
        rows.append(row)
        print(row)
    with open(args.out, "w") as fh:
        json.dump(rows, fh, indent=2)


if __name__ == "__main__":
    main()
