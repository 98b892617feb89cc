"""Quadratic equations p(x, y, n) = 0 over Z[i]: the discriminant condition, solution
families from admissible 4-tuples, monochromatic-solution searches and the
recurrence average over Theta_N.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .gint import ONE, ZERO, GaussianInt, factor
from .rng import hash_ints


def canonical_root(z: GaussianInt) -> GaussianInt:
    """Of z and -z, the one with re > 0, or im >= 0 when re = 0."""
    if z.re < 0 or (z.re == 0 and z.im < 0):
        return -z
    return z


def gaussian_sqrt(w) -> GaussianInt | None:
    """A square root of w in Z[i] (the canonical one of the pair), or None."""
    w = GaussianInt.of(w)
    if not w:
        return ZERO
    fac = factor(w)
    root = ONE
    for p, m in fac.factors:
        if m % 2:
            return None
        root = root * p.value ** (m // 2)
    if fac.unit == ONE:
        pass
    elif fac.unit == -ONE:
        root = root * GaussianInt(0, 1)
    else:
        return None
    return canonical_root(root)


@dataclass(frozen=True)
class QuadraticForm:
    """a x^2 + b y^2 + c n^2 + d xy + e xn + f yn."""

    a: GaussianInt
    b: GaussianInt
    c: GaussianInt
    d: GaussianInt = ZERO
    e: GaussianInt = ZERO
    f: GaussianInt = ZERO

    def __post_init__(self):
        for name in "abcdef":
            object.__setattr__(self, name, GaussianInt.of(getattr(self, name)))

    @classmethod
    def parse(cls, text: str) -> "QuadraticForm":
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 6:
            raise ValueError("a form needs six comma-separated coefficients a,b,c,d,e,f")
        return cls(*(GaussianInt.of(p) for p in parts))

    def __str__(self):
        return ",".join(str(getattr(self, k)) for k in "abcdef")

    def __call__(self, x, y, n) -> GaussianInt:
        x, y, n = (GaussianInt.of(v) for v in (x, y, n))
        return (self.a * x * x + self.b * y * y + self.c * n * n
                + self.d * x * y + self.e * x * n + self.f * y * n)

    def discriminants(self) -> tuple[GaussianInt, GaussianInt, GaussianInt]:
        a, b, c, d, e, f = (getattr(self, k) for k in "abcdef")
        return (e * e - 4 * a * c, f * f - 4 * b * c, (e + f) * (e + f) - 4 * c * (a + b + d))

    def solve_n(self, x, y, require_nonzero: bool = False) -> GaussianInt | None:
        """Some n in Z[i] with p(x, y, n) = 0, or None.  Canonical-looking roots come first."""
        x, y = GaussianInt.of(x), GaussianInt.of(y)
        lin = self.e * x + self.f * y
        const = self.a * x * x + self.b * y * y + self.d * x * y
        if not self.c:
            if not lin:
                raise ValueError("n does not appear in p")
            n = (-const).exact_div(lin)
            cands = [] if n is None else [n]
        else:
            root = gaussian_sqrt(lin * lin - 4 * self.c * const)
            if root is None:
                return None
            cands = []
            for r in (root, -root):
                n = (r - lin).exact_div(2 * self.c)
                if n is not None and n not in cands:
                    cands.append(n)
            cands.sort(key=lambda z: canonical_root(z) != z)
        for n in cands:
            if require_nonzero and not n:
                continue
            return n
        return None


X2_Y2_N2 = QuadraticForm(1, -1, -1)


def form_condition(p: QuadraticForm):
    """(ok, roots): all three discriminants must be perfect squares in Z[i]."""
    roots = tuple(gaussian_sqrt(dsc) for dsc in p.discriminants())
    return all(r is not None for r in roots), roots


@dataclass(frozen=True)
class AdmissibleTuple:
    g1: GaussianInt
    g2: GaussianInt
    g3: GaussianInt
    g4: GaussianInt

    def __post_init__(self):
        for name in ("g1", "g2", "g3", "g4"):
            object.__setattr__(self, name, GaussianInt.of(getattr(self, name)))
        if self.g1 == self.g2 or self.g3 == self.g4:
            raise ValueError("admissible tuples need g1 != g2 and g3 != g4")
        if {self.g1, self.g2} == {self.g3, self.g4}:
            raise ValueError("admissible tuples need {g1, g2} != {g3, g4}")

    def __iter__(self):
        return iter((self.g1, self.g2, self.g3, self.g4))


# x = alpha (alpha + 2 beta), y = (alpha + (1+i) beta)(alpha + (1-i) beta):
# x^2 - y^2 = (2i beta (alpha + beta))^2
PYTHAGOREAN_TUPLE = AdmissibleTuple(GaussianInt(0), GaussianInt(2), GaussianInt(1, 1), GaussianInt(1, -1))


def solutions_from_tuple(t: AdmissibleTuple, gamma0, gamma_p, alpha, beta):
    gamma0, gamma_p, alpha, beta = (GaussianInt.of(v) for v in (gamma0, gamma_p, alpha, beta))
    if not gamma0:
        raise ValueError("gamma0 must be nonzero")
    s = gamma_p * gamma0
    x = s * (alpha + t.g1 * beta) * (alpha + t.g2 * beta)
    y = s * (alpha + t.g3 * beta) * (alpha + t.g4 * beta)
    return x, y


# colorings

@dataclass(frozen=True, eq=False)
class Coloring:
    kind: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        kind = self.kind
        p = dict(self.params)
        if kind == "parity":
            cells = 2
        elif kind == "residue_mod":
            gamma = GaussianInt.of(p.get("gamma", GaussianInt(2, 1)))
            if not gamma:
                raise ValueError("residue coloring needs a nonzero modulus")
            p["gamma"] = gamma
            n = gamma.norm_sq
            reps = sorted({(z.divmod_round(gamma)[1].re, z.divmod_round(gamma)[1].im)
                           for z in (GaussianInt(a, b) for a in range(n) for b in range(n))})
            object.__setattr__(self, "_reps", {r: i for i, r in enumerate(reps)})
            cells = len(reps)
        elif kind == "sector":
            cells = int(p.get("count", 4))
        elif kind == "norm_band":
            p.setdefault("width", 10)
            cells = int(p.get("count", 3))
        elif kind == "seeded_random":
            p.setdefault("seed", 0)
            cells = int(p.get("k", 2))
        elif kind == "constant":
            cells = 1
        elif kind == "table":
            table = {GaussianInt.of(k): int(v) for k, v in dict(p.get("table", {})).items()}
            p["table"] = table
            p.setdefault("default", 0)
            cells = max([p["default"], *table.values()]) + 1
        else:
            raise ValueError(f"unknown coloring kind {kind!r}")
        if cells < 1:
            raise ValueError("a coloring needs at least one cell")
        object.__setattr__(self, "params", p)
        object.__setattr__(self, "cells", cells)

    @classmethod
    def parse(cls, text: str, seed: int = 0) -> "Coloring":
        """``parity``, ``residue:2+i``, ``sector:4``, ``band:10:3``, ``random:2``, ``constant``."""
        kind, *args = text.split(":")
        if kind == "parity":
            return cls("parity")
        if kind in ("residue", "residue_mod"):
            return cls("residue_mod", {"gamma": GaussianInt.of(args[0]) if args else GaussianInt(2, 1)})
        if kind == "sector":
            return cls("sector", {"count": int(args[0]) if args else 4})
        if kind in ("band", "norm_band"):
            return cls("norm_band", {"width": int(args[0]) if args else 10,
                                     "count": int(args[1]) if len(args) > 1 else 3})
        if kind in ("random", "seeded_random"):
            return cls("seeded_random", {"k": int(args[0]) if args else 2,
                                         "seed": int(args[1]) if len(args) > 1 else seed})
        if kind in ("constant", "one"):
            return cls("constant")
        raise ValueError(f"unknown coloring {text!r}")

    def __call__(self, z) -> int:
        z = GaussianInt.of(z)
        kind, p = self.kind, self.params
        if kind == "parity":
            return (z.re + z.im) % 2
        if kind == "residue_mod":
            r = z.divmod_round(p["gamma"])[1]
            return self._reps[(r.re, r.im)]
        if kind == "sector":
            ang = math.atan2(z.im, z.re) % (2 * math.pi)
            return min(int(ang * self.cells / (2 * math.pi)), self.cells - 1)
        if kind == "norm_band":
            return (math.isqrt(z.norm_sq) // p["width"]) % self.cells
        if kind == "seeded_random":
            return hash_ints(p["seed"], z.re, z.im) % self.cells
        if kind == "table":
            return p["table"].get(z, p["default"])
        return 0

    def describe(self) -> dict:
        out = {"kind": self.kind, "cells": self.cells}
        for k, v in self.params.items():
            if k == "table":
                out[k] = {str(z): c for z, c in sorted(v.items(), key=lambda t: (t[0].re, t[0].im))}
            else:
                out[k] = str(v) if isinstance(v, GaussianInt) else v
        return out


@dataclass(frozen=True)
class Witness:
    x: GaussianInt
    y: GaussianInt
    n: GaussianInt
    color: int
    source: str

    def to_json(self, cell_sizes=None) -> dict:
        out = {"x": str(self.x), "y": str(self.y), "n": str(self.n), "color": self.color, "source": self.source}
        if cell_sizes is not None:
            out["cell_sizes"] = cell_sizes
        return out


def gaussians_by_size(bound: int, include_zero: bool = False) -> list[GaussianInt]:
    """Gaussian integers of norm <= bound, ordered by (norm, -re, -im): 1, i, -i, -1, 1+i, ..."""
    r = math.isqrt(bound)
    pts = [GaussianInt(a, b) for a in range(-r, r + 1) for b in range(-r, r + 1)
           if a * a + b * b <= bound and (include_zero or a or b)]
    pts.sort(key=lambda z: (z.norm_sq, -z.re, -z.im))
    return pts


def in_box(z: GaussianInt, box: int) -> bool:
    return abs(z.re) <= box and abs(z.im) <= box


def verify_witness(w: Witness, coloring: Coloring, p: QuadraticForm, require_nonzero_n: bool = False) -> bool:
    return (bool(w.x) and bool(w.y) and w.x != w.y and (bool(w.n) or not require_nonzero_n)
            and coloring(w.x) == coloring(w.y) == w.color and not p(w.x, w.y, w.n))


def search_monochromatic(coloring: Coloring, box: int, p: QuadraticForm,
                         require_distinct_nonzero: bool = False,
                         tuple_: AdmissibleTuple | None = None,
                         param_bound: int | None = None,
                         gamma0: GaussianInt = ONE) -> Witness | None:
    """First monochromatic solution with x != y, x, y != 0 and |re|, |im| <= box.

    Candidates from the solution family of ``tuple_`` (default: the built-in one
    for x^2 - y^2 - n^2) come first, scanning (gamma', alpha, beta) over Gaussian
    integers of norm <= param_bound; then a raster scan of all pairs in the box.
    """
    if box < 1:
        raise ValueError("box must be >= 1")
    if not p.c and not p.e and not p.f:
        raise ValueError("n does not appear in p")
    if tuple_ is None and p == X2_Y2_N2:
        tuple_ = PYTHAGOREAN_TUPLE
    color_cache: dict = {}

    def col(z):
        c = color_cache.get(z)
        if c is None:
            c = color_cache[z] = coloring(z)
        return c

    def try_pair(x, y, source):
        if not x or not y or x == y or col(x) != col(y):
            return None
        n = p.solve_n(x, y, require_nonzero=require_distinct_nonzero)
        if n is None:
            return None
        return Witness(x, y, n, col(x), source)

    if tuple_ is not None:
        small = gaussians_by_size(box if param_bound is None else param_bound)
        alphas = [ZERO] + small
        for gp in small:
            for alpha in alphas:
                for beta in small:
                    x, y = solutions_from_tuple(tuple_, gamma0, gp, alpha, beta)
                    if not (in_box(x, box) and in_box(y, box)):
                        continue
                    w = try_pair(x, y, "tuple")
                    if w is not None:
                        return w
    pts = [GaussianInt(a, b) for a in range(-box, box + 1) for b in range(-box, box + 1) if a or b]
    for x in pts:
        for y in pts:
            w = try_pair(x, y, "raster")
            if w is not None:
                return w
    return None


def cell_sizes(coloring: Coloring, box: int) -> list[int]:
    sizes = [0] * coloring.cells
    for a in range(-box, box + 1):
        for b in range(-box, box + 1):
            if a or b:
                sizes[coloring(GaussianInt(a, b))] += 1
    return sizes


def theta_pairs(t: AdmissibleTuple, n: int):
    """Theta_N = {(alpha, beta) in R_N^2 : alpha + g_i beta in R_N for all i} as coordinate arrays."""
    r = np.arange(1, n + 1, dtype=np.int64)
    a1, a2 = np.meshgrid(r, r, indexing="ij")
    a1, a2 = a1.ravel(), a2.ravel()
    keep_a, keep_b = [], []
    for b1 in r:
        for b2 in r:
            ok = np.ones(a1.shape, dtype=bool)
            for g in t:
                p1 = a1 + g.re * b1 - g.im * b2
                p2 = a2 + g.im * b1 + g.re * b2
                ok &= (p1 >= 1) & (p1 <= n) & (p2 >= 1) & (p2 <= n)
            if ok.any():
                idx = np.nonzero(ok)[0]
                keep_a.append(np.stack([a1[idx], a2[idx]], axis=1))
                keep_b.append(np.tile([b1, b2], (idx.size, 1)))
    if not keep_a:
        return np.zeros((0, 2), np.int64), np.zeros((0, 2), np.int64)
    return np.concatenate(keep_a), np.concatenate(keep_b)


def _pattern_product(t_pair, alpha, beta):
    (g, h) = t_pair

    def lin(gm):
        return alpha[:, 0] + gm.re * beta[:, 0] - gm.im * beta[:, 1], alpha[:, 1] + gm.im * beta[:, 0] + gm.re * beta[:, 1]

    u1, u2 = lin(g)
    v1, v2 = lin(h)
    return u1 * v1 - u2 * v2, u1 * v2 + u2 * v1


def recurrence_average(pred, t: AdmissibleTuple, n: int) -> float:
    """E_{Theta_N} 1_E((alpha + g1 beta)(alpha + g2 beta)) 1_E((alpha + g3 beta)(alpha + g4 beta))."""
    alpha, beta = theta_pairs(t, n)
    if not len(alpha):
        raise ValueError(f"Theta_N is empty for N={n} and this tuple; increase N")
    x1, x2 = _pattern_product((t.g1, t.g2), alpha, beta)
    y1, y2 = _pattern_product((t.g3, t.g4), alpha, beta)
    vals = np.stack([np.concatenate([x1, y1]), np.concatenate([x2, y2])], axis=1)
    uniq, inv = np.unique(vals, axis=0, return_inverse=True)
    hit = np.array([bool(pred(GaussianInt(int(a), int(b)))) for a, b in uniq])[inv.ravel()]
    k = len(alpha)
    return float(np.mean(hit[:k] & hit[k:]))


def parse_predicate(text: str):
    """Named predicates for the CLI: all, none, even/odd (parity of re+im), sq (perfect squares), color:SPEC (cell 0)."""
    kind, _, arg = text.partition(":")
    if kind == "all":
        return lambda z: True
    if kind == "none":
        return lambda z: False
    if kind == "even":
        return lambda z: (z.re + z.im) % 2 == 0
    if kind == "odd":
        return lambda z: (z.re + z.im) % 2 == 1
    if kind == "sq":
        return lambda z: gaussian_sqrt(z) is not None
    if kind == "color":
        col = Coloring.parse(arg)
        return lambda z: col(z) == 0
    raise ValueError(f"unknown predicate {text!r}")
