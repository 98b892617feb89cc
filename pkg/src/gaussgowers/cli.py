"""Command-line front end: ``gg <subcommand> [flags]``.

Exit status is 0 on success, 1 when a mathematical precondition fails and 2 on
usage errors.  JSON reports carry ``"schema": "gg/1"`` and are written with
sorted keys so repeated runs compare byte for byte.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

SCHEMA = "gg/1"


class PreconditionError(Exception):
    pass


def _dump(payload: dict, args) -> None:
    payload = {"schema": SCHEMA, "command": args.command, **payload}
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    if getattr(args, "json", False) or not getattr(args, "out", None):
        sys.stdout.write(text)


def _grid_from(args):
    from .grid import make_grid

    return make_grid(args.ell, args.n, args.relaxed)


def _chi(text: str, seed: int):
    from .multfn import MultiplicativeSpec, parse_chi

    if text in ("random", "seeded_random"):
        return MultiplicativeSpec(text, seed)
    return parse_chi(text)


# subcommands

def cmd_sieve(args):
    from .gint import PrimeSet, write_primes_csv

    if args.bound < 0:
        raise PreconditionError("bound must be >= 0")
    ps = PrimeSet.up_to(args.bound)
    counts = {c: sum(1 for p in ps if p.cls == c) for c in ("ramified", "split", "inert")}
    if args.out:
        write_primes_csv(ps, args.out)
    payload = {"bound": args.bound, "count": len(ps), "a_p": ps.a_p, "classes": counts}
    if args.json or not args.out:
        sys.stdout.write(json.dumps({"schema": SCHEMA, "command": "sieve", **payload}, sort_keys=True, indent=2) + "\n")


def cmd_gowers(args):
    from .gowers import gowers_norm
    from .grid import GridFunction
    from .io import read_grid
    from .multfn import embed

    if args.degree not in (1, 2, 3):
        raise PreconditionError("degree must be 1..3")
    if args.input:
        f = read_grid(args.input)
        source = args.input
    elif args.chi:
        f = embed(_chi(args.chi, args.seed), _grid_from(args))
        source = f"chi={args.chi}"
    else:
        grid = _grid_from(args)
        rng = np.random.default_rng(args.seed)
        f = GridFunction(grid, rng.choice([-1.0, 1.0], size=grid.shape))
        source = "random_sign"
    _dump({"degree": args.degree, "norm": gowers_norm(f, args.degree), "n_tilde": f.grid.n_tilde,
           "source": source}, args)


def cmd_katai(args):
    from .grid import character
    from .io import read_grid
    from .multfn import builtin_family, embed, family_correlation, katai_statistic, write_katai_csv

    grid = _grid_from(args)
    if args.input:
        f = read_grid(args.input, grid)
        source = args.input
    elif args.xi:
        xi = [int(v) for v in args.xi.split(",")]
        f = character(grid, *xi) * grid.box_mask()
        source = f"character xi={xi}"
    else:
        f = embed(_chi(args.chi, args.seed), grid)
        source = f"chi={args.chi}"
    best, pair, table = katai_statistic(f, args.k0, args.k)
    if args.table:
        write_katai_csv(table, args.table)
    _dump({
        "n": grid.n, "n_tilde": grid.n_tilde, "k0": args.k0, "k": args.k, "source": source,
        "max_pair_corr": best, "argmax": [str(pair[0]), str(pair[1])], "pairs": len(table),
        "family_corr": family_correlation(f, builtin_family(args.seed)),
    }, args)


def cmd_decompose(args):
    from .decomp import decompose, estimate_qv
    from .io import write_grid_binary, write_grid_csv
    from .multfn import builtin_family, load_family

    grid = _grid_from(args)
    chi = _chi(args.chi, args.seed)
    if not 0 < args.eps < 1:
        raise PreconditionError("eps must lie in (0, 1)")
    q_auto, v_auto = args.q == "auto", args.v == "auto"
    est = None
    if q_auto or v_auto:
        family = load_family(args.family) if args.family else [chi]
        est = estimate_qv(family, grid, args.eps, q_cap=args.q_cap)
    q = est.q if q_auto else int(args.q)
    v = est.v if v_auto else int(args.v)
    rep = decompose(chi, grid, args.eps, q, v)
    payload = rep.scalars()
    if est is not None:
        payload["estimate"] = {"q": est.q, "v": est.v, "uniform": est.uniform,
                               "peak_count": est.peak_count, "w_table": est.w_table}
    if args.dump:
        paths = {}
        for name, g in (("chi_s", rep.chi_s), ("chi_u", rep.chi_u)):
            if args.dump_format == "csv":
                path = f"{args.dump}_{name}.csv"
                write_grid_csv(g, path)
            else:
                path = f"{args.dump}_{name}.ggr"
                write_grid_binary(g, path)
            paths[name] = path
        payload["grids"] = paths
    _dump(payload, args)


def _load_group(path):
    from .nil import NilGroup

    if not path:
        return NilGroup.heisenberg()
    with open(path) as fh:
        return NilGroup.from_json(json.load(fh))


def _load_seq(group, path, seed: int):
    from .nil import NilElement, PolySeq2

    if path:
        with open(path) as fh:
            return PolySeq2.from_json(group, json.load(fh))
    rng = np.random.default_rng(seed)
    s = group.s

    def el():
        return NilElement(tuple(rng.random(s)), rng.random())

    def vert():
        return NilElement.vertical(s, rng.random())

    return PolySeq2(group, el(), el(), el(), vert(), vert(), vert())


def cmd_nilorbit(args):
    from .io import write_orbit_csv
    from .nil import HorizontalExp, VerticalNilchar, equid_defect, orbit

    if args.n < 1:
        raise PreconditionError("n must be >= 1")
    group = _load_group(args.group)
    seq = _load_seq(group, args.seq, args.seed)
    pts = orbit(seq, args.n)
    if args.orbit_csv:
        write_orbit_csv(pts, args.orbit_csv)
    defects = {}
    for i in range(group.s):
        k = tuple(1 if j == i else 0 for j in range(group.s))
        defects[f"horizontal_e{i + 1}"] = equid_defect(pts, HorizontalExp(k))
    defects["vertical_k1"] = equid_defect(pts, VerticalNilchar(1, group.s))
    _dump({"group": group.to_json(), "sequence": seq.to_json(), "n": args.n, "defects": defects,
           "mean": [float(v) for v in pts.reshape(-1, pts.shape[-1]).mean(axis=0)]}, args)


def cmd_leibman(args):
    from .nil import inverse_leibman_check, leibman_search

    group = _load_group(args.group)
    seq = _load_seq(group, args.seq, args.seed)
    found = leibman_search(seq, args.n, args.d)
    payload = {"n": args.n, "d": args.d, "sequence": seq.to_json(), "certificate": None}
    if found is not None:
        eta, norm = found
        payload["certificate"] = {"eta": list(eta.k), "smoothness": norm}
        try:
            chk = inverse_leibman_check(seq, eta, args.d, args.n, args.n)
            payload["inverse_check"] = {"correlation": chk.correlation, "bound": chk.bound,
                                        "box": list(chk.box)}
        except ValueError as exc:
            payload["inverse_check"] = {"skipped": str(exc)}
    _dump(payload, args)


def cmd_partition(args):
    from .ramsey import Coloring, QuadraticForm, cell_sizes, form_condition, search_monochromatic

    form = QuadraticForm.parse(args.form)
    coloring = Coloring.parse(args.coloring, seed=args.seed)
    ok, roots = form_condition(form)
    w = search_monochromatic(coloring, args.box, form, args.require_nonzero)
    payload = {"form": str(form), "coloring": coloring.describe(), "box": args.box,
               "form_condition": {"ok": ok, "roots": [None if r is None else str(r) for r in roots]},
               "witness": None if w is None else w.to_json(cell_sizes(coloring, args.box))}
    _dump(payload, args)


def cmd_recurrence(args):
    from .gint import GaussianInt
    from .ramsey import PYTHAGOREAN_TUPLE, AdmissibleTuple, parse_predicate, recurrence_average

    t = (AdmissibleTuple(*(GaussianInt.of(v.strip()) for v in args.tuple.split(",")))
         if args.tuple else PYTHAGOREAN_TUPLE)
    value = recurrence_average(parse_predicate(args.pred), t, args.n)
    _dump({"tuple": [str(g) for g in t], "predicate": args.pred, "n": args.n, "average": value}, args)


# parser

def _grid_flags(p, n_default=10):
    p.add_argument("--n", type=int, default=n_default, help="box size N (default %(default)s)")
    p.add_argument("--ell", type=int, default=1, help="grid margin factor (default %(default)s)")
    p.add_argument("--relaxed", action="store_true", help="use the smallest prime > N as grid size")


def _out_flags(p, what="JSON report"):
    p.add_argument("--out", help=f"output path for the {what}")
    p.add_argument("--json", action="store_true", help="also print JSON to stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gg", description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=0, help="seed for every random choice (default %(default)s)")
    parser.add_argument("--config", help="JSON file supplying flag defaults; command-line flags win")
    sub = parser.add_subparsers(dest="command", metavar="command")
    subs = {}

    p = sub.add_parser("sieve", help="list canonical Gaussian primes",
                       formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    p.add_argument("--bound", type=int, default=100, help="largest norm a^2+b^2")
    _out_flags(p, "CSV prime table")
    p.set_defaults(func=cmd_sieve)
    subs["sieve"] = p

    p = sub.add_parser("gowers", help="Gowers norm of a grid function",
                       formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    p.add_argument("--input", help="grid file (CSV a,b,re,im or GGR1 binary)")
    p.add_argument("--chi", help="use chi_N for a built-in multiplicative function kind[:param]")
    p.add_argument("--degree", type=int, default=2, help="1, 2 or 3")
    _grid_flags(p)
    _out_flags(p)
    p.set_defaults(func=cmd_gowers)
    subs["gowers"] = p

    p = sub.add_parser("katai", help="Katai prime-pair correlation statistic",
                       formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    p.add_argument("--chi", default="liouville", help="multiplicative function kind[:param]")
    p.add_argument("--xi", help="use the character e(alpha.xi/Ñ) restricted to R_N, given as 'x1,x2'")
    p.add_argument("--input", help="grid file instead of --chi")
    p.add_argument("--k0", type=int, default=1, help="lower norm bound (exclusive)")
    p.add_argument("--k", type=int, default=30, help="upper norm bound (exclusive)")
    p.add_argument("--table", help="CSV path for the full pair table")
    _grid_flags(p, 20)
    _out_flags(p)
    p.set_defaults(func=cmd_katai)
    subs["katai"] = p

    p = sub.add_parser("decompose", help="structure/uniform split of chi_N",
                       formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    p.add_argument("--chi", default="liouville", help="multiplicative function kind[:param]")
    p.add_argument("--eps", type=float, default=0.3, help="uniformity target in (0, 1)")
    p.add_argument("--q", default="auto", help="'auto' or an integer")
    p.add_argument("--v", default="auto", help="'auto' or an integer")
    p.add_argument("--q-cap", type=int, default=7, help="search Q among k! for k <= cap")
    p.add_argument("--family", help="JSON list of {kind, seed, modulus?} used by the auto estimate")
    p.add_argument("--dump", help="path prefix for chi_s / chi_u grid dumps")
    p.add_argument("--dump-format", choices=("bin", "csv"), default="bin", help="grid dump format")
    _grid_flags(p, 50)
    _out_flags(p)
    p.set_defaults(func=cmd_decompose)
    subs["decompose"] = p

    p = sub.add_parser("nilorbit", help="orbit of a degree-2 sequence on a nilmanifold",
                       formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    p.add_argument("--group", help="group JSON {B: [[...]]}; Heisenberg when omitted")
    p.add_argument("--seq", help="sequence JSON {g0, g11, g12, g21, g22, g23}; seeded random when omitted")
    p.add_argument("--n", type=int, default=50, help="orbit over [N]^2")
    p.add_argument("--orbit-csv", help="CSV path for the orbit points")
    _out_flags(p)
    p.set_defaults(func=cmd_nilorbit)
    subs["nilorbit"] = p

    p = sub.add_parser("leibman", help="search for a small horizontal character with smooth eta(g)",
                       formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    p.add_argument("--group", help="group JSON; Heisenberg when omitted")
    p.add_argument("--seq", help="sequence JSON; seeded random when omitted")
    p.add_argument("--n", type=int, default=500, help="scale N")
    p.add_argument("--d", type=int, default=5, help="bound D on ||eta|| and the smoothness norm")
    _out_flags(p)
    p.set_defaults(func=cmd_leibman)
    subs["leibman"] = p

    p = sub.add_parser("partition", help="search for a monochromatic solution of p(x, y, n) = 0",
                       formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    p.add_argument("--form", default="1,-1,-1,0,0,0", help="coefficients a,b,c,d,e,f")
    p.add_argument("--coloring", default="parity",
                   help="parity | residue:G | sector:K | band:W:K | random:K[:SEED] | constant")
    p.add_argument("--box", type=int, default=30, help="search |re|, |im| <= box")
    p.add_argument("--require-nonzero", action="store_true", help="also require n != 0")
    _out_flags(p)
    p.set_defaults(func=cmd_partition)
    subs["partition"] = p

    p = sub.add_parser("recurrence", help="recurrence average over Theta_N",
                       formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    p.add_argument("--pred", default="even", help="all | none | even | odd | sq | color:SPEC")
    p.add_argument("--tuple", help="g1,g2,g3,g4; defaults to 0,2,1+i,1-i")
    p.add_argument("--n", type=int, default=30, help="box size N")
    _out_flags(p)
    p.set_defaults(func=cmd_recurrence)
    subs["recurrence"] = p

    parser._subs = subs  # used to apply config defaults
    return parser


def _apply_config(parser, argv) -> None:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, rest = pre.parse_known_args(argv)
    if not known.config:
        return
    with open(known.config) as fh:
        cfg = json.load(fh)
    if not isinstance(cfg, dict):
        raise PreconditionError("config file must hold a JSON object")
    cfg = {k.replace("-", "_"): v for k, v in cfg.items()}
    if "seed" in cfg:
        parser.set_defaults(seed=cfg.pop("seed"))
    cmd = next((a for a in rest if a in parser._subs), None)
    if cmd is not None:
        parser._subs[cmd].set_defaults(**cfg)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        _apply_config(parser, argv)
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    except (OSError, ValueError, PreconditionError) as exc:
        print(f"gg: {exc}", file=sys.stderr)
        return 1
    if not args.command:
        parser.print_usage(sys.stderr)
        return 2
    try:
        args.func(args)
    except (PreconditionError, ValueError, ArithmeticError, OSError) as exc:
        print(f"gg {args.command}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
