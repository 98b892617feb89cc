"""Completely multiplicative unit-modulus functions on Z[i] \\ {0}, their restriction
to the box R_N, and the Katai pair-correlation statistic.
"""
from __future__ import annotations

import cmath
import json
import math
import threading
from dataclasses import dataclass, field

import numpy as np
import sympy

from .gint import GaussianInt, divisibility_mask, factor, sieve_primes
from .grid import GridFunction, TorusGrid, fourier
from .rng import unit_float

KINDS = ("principal", "liouville_like", "residue_character", "archimedean", "seeded_random")
ALIASES = {
    "liouville": "liouville_like",
    "random": "seeded_random",
    "residue": "residue_character",
    "arch": "archimedean",
}


def e(x: float) -> complex:
    return cmath.exp(2j * math.pi * x)


@dataclass(eq=False)
class MultiplicativeSpec:
    """A completely multiplicative function given by its values at i and at canonical primes.

    ``param`` is the seed for ``seeded_random`` and the frequency exponent k for
    ``residue_character`` and ``archimedean``.  Prime values are filled in lazily.
    """

    kind: str
    param: int = 1
    modulus: GaussianInt = field(default_factory=lambda: GaussianInt(2, 1))
    twist: float = 0.0
    prime_values: dict = field(default_factory=dict, repr=False)
    unit_value_i: complex = field(init=False)

    def __post_init__(self):
        self.kind = ALIASES.get(self.kind, self.kind)
        if self.kind not in KINDS:
            raise ValueError(f"unknown multiplicative kind {self.kind!r}")
        self.modulus = GaussianInt.of(self.modulus)
        self._lock = threading.Lock()
        if self.kind == "residue_character":
            self._setup_residue()
            self.unit_value_i = self._residue_value(GaussianInt(0, 1))
        else:
            self.unit_value_i = 1 + 0j
        if abs(self.unit_value_i ** 4 - 1) > 1e-12:
            raise ValueError("chi(i)^4 must equal 1")
        for v in self.prime_values.values():
            if abs(abs(v) - 1) > 1e-12:
                raise ValueError("prime values must have modulus 1")

    @property
    def label(self) -> str:
        base = f"{self.kind}:{self.param}"
        if self.kind == "residue_character":
            base += f"@{self.modulus}"
        return base

    # residue characters: Z[i] -> Z[i]/pi = Z/p, then a Dirichlet character mod p
    def _setup_residue(self):
        pi = self.modulus.canonical()
        p0 = pi.norm_sq
        if not (sympy.isprime(p0) and p0 % 4 == 1):
            raise ValueError(f"residue character modulus must be a split prime, got {self.modulus}")
        self._pi, self._p0 = pi, p0
        # pi = a + bi = 0 in the quotient, so i = -a/b
        self._t = (-pi.re * pow(pi.im, -1, p0)) % p0
        g = int(sympy.primitive_root(p0))
        self._log = {}
        x = 1
        for k in range(p0 - 1):
            self._log[x] = k
            x = x * g % p0

    def _residue_value(self, alpha: GaussianInt) -> complex:
        r = (alpha.re + alpha.im * self._t) % self._p0
        if r == 0:
            return 1 + 0j
        return e(self.param * self._log[r] / (self._p0 - 1))

    def _new_prime_value(self, p: GaussianInt) -> complex:
        if self.kind == "principal":
            return 1 + 0j
        if self.kind == "liouville_like":
            return -1 + 0j
        if self.kind == "residue_character":
            return 1 + 0j if p == self._pi else self._residue_value(p)
        if self.kind == "archimedean":
            angle = 4 * self.param * math.atan2(p.im, p.re)
            return cmath.exp(1j * (angle + self.twist * math.log(p.norm_sq)))
        return e(unit_float(self.param, p.re, p.im))

    def prime_value(self, p: GaussianInt) -> complex:
        v = self.prime_values.get(p)
        if v is None:
            with self._lock:
                v = self.prime_values.get(p)
                if v is None:
                    v = self._new_prime_value(p)
                    self.prime_values[p] = v
        return v

    def unit_value(self, u: GaussianInt) -> complex:
        k = {GaussianInt(1, 0): 0, GaussianInt(0, 1): 1, GaussianInt(-1, 0): 2, GaussianInt(0, -1): 3}[u]
        return self.unit_value_i ** k

    def __call__(self, alpha) -> complex:
        return evaluate(self, alpha)


def evaluate(chi: MultiplicativeSpec, alpha) -> complex:
    alpha = GaussianInt.of(alpha)
    if not alpha:
        raise ValueError("multiplicative functions are not defined at 0")
    fac = factor(alpha)
    out = chi.unit_value(fac.unit)
    for p, m in fac.factors:
        out *= chi.prime_value(p.value) ** m
    return out


def parse_chi(text: str) -> MultiplicativeSpec:
    """``kind[:param]``, e.g. ``liouville``, ``random:7``, ``residue:1``."""
    kind, _, rest = text.partition(":")
    return MultiplicativeSpec(kind, int(rest) if rest else 1)


def spec_from_dict(d: dict) -> MultiplicativeSpec:
    kw = {"param": int(d.get("seed", d.get("param", 1)))}
    if "modulus" in d:
        kw["modulus"] = GaussianInt.of(d["modulus"])
    return MultiplicativeSpec(d["kind"], **kw)


def load_family(path) -> list[MultiplicativeSpec]:
    with open(path) as fh:
        return [spec_from_dict(d) for d in json.load(fh)]


def builtin_family(seed: int = 1) -> list[MultiplicativeSpec]:
    """One member of each built-in kind."""
    return [
        MultiplicativeSpec("principal"),
        MultiplicativeSpec("liouville_like"),
        MultiplicativeSpec("residue_character", 1),
        MultiplicativeSpec("archimedean", 1),
        MultiplicativeSpec("seeded_random", seed),
    ]


def box_values(chi: MultiplicativeSpec, n: int) -> np.ndarray:
    """chi(a + bi) for 1 <= a, b <= n as an n x n array indexed [a-1, b-1]."""
    out = np.empty((n, n), dtype=complex)
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            out[a - 1, b - 1] = evaluate(chi, GaussianInt(a, b))
    return out


def embed(chi: MultiplicativeSpec, grid: TorusGrid) -> GridFunction:
    """chi_N = chi * 1_{R_N} on R_Ñ."""
    n, nt = grid.n, grid.n_tilde
    vals = np.zeros(grid.shape, dtype=complex)
    box = box_values(chi, n)
    idx = np.arange(1, n + 1) % nt
    vals[np.ix_(idx, idx)] = box
    return GridFunction(grid, vals)


def spectrum_peaks(chi: MultiplicativeSpec, grid: TorusGrid, threshold: float, chi_n: GridFunction | None = None):
    """All (xi, |chi_N^(xi)|) above threshold, largest first.  xi is given mod Ñ in 0..Ñ-1."""
    if not 0 < threshold:
        raise ValueError("threshold must be positive")
    f = embed(chi, grid) if chi_n is None else chi_n
    mag = np.abs(fourier(f).values)
    k1, k2 = np.nonzero(mag >= threshold)
    order = np.lexsort((k2, k1, -mag[k1, k2]))
    return [((int(k1[i]), int(k2[i])), float(mag[k1[i], k2[i]])) for i in order]


def quotient_set(p: GaussianInt, n: int) -> tuple[np.ndarray, np.ndarray]:
    """R_N / p = {alpha : p alpha in R_N}, as coordinate arrays."""
    a, b = np.meshgrid(np.arange(1, n + 1, dtype=np.int64), np.arange(1, n + 1, dtype=np.int64), indexing="ij")
    a, b = a.ravel(), b.ravel()
    mask = divisibility_mask(p, a, b)
    a, b = a[mask], b[mask]
    ns = p.norm_sq
    # (a + bi) * conj(p) / norm
    return (a * p.re + b * p.im) // ns, (b * p.re - a * p.im) // ns


@dataclass(frozen=True)
class KataiRow:
    p: GaussianInt
    q: GaussianInt
    statistic: float
    overlap: int


def katai_statistic(f: GridFunction, k0: int, k: int, n: int | None = None):
    """max over prime pairs of N^-2 |sum_{alpha in R_N/p cap R_N/q} f(p alpha) conj f(q alpha)|.

    Pairs range over canonical primes with k0 < norm(p) < norm(q) < k.
    Returns (max value, (p, q), table of KataiRow).
    """
    if k0 >= k:
        raise ValueError("need K0 < K")
    n = f.grid.n if n is None else n
    nt = f.grid.n_tilde
    vals = f.values
    if np.abs(vals[np.ix_(np.arange(1, n + 1) % nt, np.arange(1, n + 1) % nt)]).max() > 1 + 1e-12:
        raise ValueError("f must be bounded by 1 on R_N")
    primes = [p.value for p in sieve_primes(k - 1) if k0 < p.norm_sq < k]
    quot = {p: quotient_set(p, n) for p in primes}
    table = []
    for i, p in enumerate(primes):
        for q in primes[i + 1:]:
            if not p.norm_sq < q.norm_sq:
                continue
            a, b = quot[p]
            qa, qb = a * q.re - b * q.im, a * q.im + b * q.re
            inside = (qa >= 1) & (qa <= n) & (qb >= 1) & (qb <= n)
            a, b, qa, qb = a[inside], b[inside], qa[inside], qb[inside]
            pa, pb = a * p.re - b * p.im, a * p.im + b * p.re
            s = np.sum(vals[pa % nt, pb % nt] * np.conj(vals[qa % nt, qb % nt]))
            table.append(KataiRow(p, q, abs(complex(s)) / (n * n), int(inside.sum())))
    if not table:
        raise ValueError("no admissible prime pairs")
    best = max(table, key=lambda r: r.statistic)
    return best.statistic, (best.p, best.q), table


def family_correlation(f: GridFunction, family, n: int | None = None) -> float:
    """sup over the family of |E_{alpha in R_N} conj(chi(alpha)) f(alpha)|."""
    n = f.grid.n if n is None else n
    nt = f.grid.n_tilde
    idx = np.arange(1, n + 1) % nt
    fv = f.values[np.ix_(idx, idx)]
    return max(abs(complex((np.conj(box_values(chi, n)) * fv).mean())) for chi in family)


def write_katai_csv(table, path) -> None:
    import csv

    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["p", "q", "statistic"])
        for r in table:
            w.writerow([str(r.p), str(r.q), repr(r.statistic)])
