"""Turán–Kubilius ratio lhs / sqrt(A_P) across box sizes and prime-set sizes."""
import argparse
import json

from gaussgowers.gint import PrimeSet, tk_discrepancy
from gaussgowers.io import svg_lines


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--bounds", default="25,100,400", help="norm bounds for the prime set P")
    ap.add_argument("--xs", default="50,100,200,400,800")
    ap.add_argument("--out", default="tk_ratio")
    args = ap.parse_args()
    xs = [int(v) for v in args.xs.split(",")]
    series, rows = {}, []
    for bound in (int(v) for v in args.bounds.split(",")):
        P = PrimeSet.up_to(bound)
        ratios = []
        for x in xs:
            lhs, root = tk_discrepancy(P, x)
            ratios.append(lhs / root)
            rows.append({"bound": bound, "x": x, "lhs": lhs, "sqrt_a_p": root, "ratio": lhs / root})
            print(f"normSq<={bound:4d}  x={x:4d}  ratio={lhs / root:.4f}")
        series[f"P<= {bound}"] = ratios
    with open(f"{args.out}.json", "w") as fh:
        json.dump(rows, fh, indent=2)
    svg_lines(xs, series, f"{args.out}.svg", title="lhs / sqrt(A_P) vs x")


if __name__ == "__main__":
    main()
