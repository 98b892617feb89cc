"""Degree-2 two-parameter polynomial sequences

    g(m, n) = g0 g11^m g12^n g21^C(m,2) g22^(mn) g23^C(n,2),   g2j in G_2,

their orbits in the fundamental domain, and equidistribution defects.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .group import NilElement, NilGroup


@dataclass(frozen=True, eq=False)
class PolySeq2:
    group: NilGroup
    g0: NilElement
    g11: NilElement
    g12: NilElement
    g21: NilElement = None
    g22: NilElement = None
    g23: NilElement = None

    def __post_init__(self):
        s = self.group.s
        for name in ("g21", "g22", "g23"):
            if getattr(self, name) is None:
                object.__setattr__(self, name, NilElement.vertical(s, 0.0))
        for name in ("g0", "g11", "g12", "g21", "g22", "g23"):
            if len(getattr(self, name).x) != s:
                raise ValueError(f"{name} has the wrong dimension for s={s}")
        for name in ("g21", "g22", "g23"):
            if any(getattr(self, name).x):
                raise ValueError(f"{name} must lie in G_2 (zero horizontal part)")

    @property
    def vertical(self) -> tuple[float, float, float]:
        return self.g21.y, self.g22.y, self.g23.y

    def to_json(self) -> dict:
        return {name: list(getattr(self, name).packed()) for name in ("g0", "g11", "g12", "g21", "g22", "g23")}

    @classmethod
    def from_json(cls, group: NilGroup, d: dict) -> "PolySeq2":
        kw = {k: NilElement.unpack(v) for k, v in d.items() if k in ("g0", "g11", "g12", "g21", "g22", "g23")}
        return cls(group, **kw)

    def horizontal(self, m, n):
        """Horizontal part x0 + m x11 + n x12 of g(m, n)."""
        m, n = np.asarray(m, float), np.asarray(n, float)
        return (np.array(self.g0.x) + m[..., None] * np.array(self.g11.x)
                + n[..., None] * np.array(self.g12.x))


def evaluate_direct(seq: PolySeq2, m, n) -> np.ndarray:
    """g(m, n) from the closed-form powers (unreduced)."""
    grp = seq.group
    m, n = np.asarray(m, float), np.asarray(n, float)
    y21, y22, y23 = seq.vertical
    central = m * (m - 1) / 2 * y21 + m * n * y22 + n * (n - 1) / 2 * y23
    out = grp.mul(grp.mul(seq.g0.packed(), grp.power(seq.g11.packed(), m)), grp.power(seq.g12.packed(), n))
    out = out.copy()
    out[..., -1] += central
    return out


def orbit_direct(seq: PolySeq2, n_range: int) -> np.ndarray:
    idx = np.arange(1, n_range + 1)
    m, n = np.meshgrid(idx, idx, indexing="ij")
    return seq.group.reduce(evaluate_direct(seq, m, n))[0]


def _vertical_mod1(d: np.ndarray) -> np.ndarray:
    # (0; k) with k integer is central and lies in Gamma, so it does not move cosets
    d = d.copy()
    d[..., -1] %= 1.0
    return d


def orbit(seq: PolySeq2, n_range: int, check_fraction: float = 0.01, seed: int = 0,
          tol: float = 1e-9) -> np.ndarray:
    """Reduced points g(m, n) e_X for (m, n) in [n_range]^2, shape (N, N, s+1).

    Points are produced by left-multiplying by difference elements, so every
    step is one group multiplication followed by a reduction.  A random sample
    of the points is checked against the closed form; a mismatch raises.
    """
    if n_range < 1:
        raise ValueError("n_range must be >= 1")
    grp = seq.group
    n_pts = n_range + 1
    x0, x11, x12 = seq.g0.packed(), seq.g11.packed(), seq.g12.packed()
    y21, y22, y23 = seq.vertical
    # column n = 0: g(m+1, 0) = Dm(m) g(m, 0), Dm(m+1) = Dm(m) g21
    col = np.empty((n_pts, grp.s + 1))
    r = grp.reduce(x0)[0]
    dm = _vertical_mod1(grp.conjugate(x0, x11))
    for m in range(n_pts):
        col[m] = r
        r = grp.reduce(grp.mul(dm, r))[0]
        dm[-1] = (dm[-1] + y21) % 1.0
    # row steps: g(m, n+1) = Dn(m, n) g(m, n), Dn(m, n+1) = Dn(m, n) g23,
    # Dn(m+1, 0) = Dn(m, 0) [g11, g12] g22
    dn0 = _vertical_mod1(grp.conjugate(x0, x12))
    step_m = grp.form(x11[:-1], x12[:-1]) + y22
    dn = np.repeat(dn0[None, :], n_pts, axis=0)
    dn[:, -1] = (dn0[-1] + np.arange(n_pts) * step_m) % 1.0
    out = np.empty((n_pts, n_pts, grp.s + 1))
    cur = col
    for n in range(n_pts):
        out[:, n] = cur
        cur = grp.reduce(grp.mul(dn, cur))[0]
        dn[:, -1] = (dn[:, -1] + y23) % 1.0
    out = out[1:, 1:]
    _spot_check(seq, out, check_fraction, seed, tol)
    return out


def _spot_check(seq: PolySeq2, pts: np.ndarray, fraction: float, seed: int, tol: float):
    if fraction <= 0:
        return
    n = pts.shape[0]
    count = max(1, int(math.ceil(fraction * n * n)))
    rng = np.random.default_rng(seed)
    flat = rng.choice(n * n, size=min(count, n * n), replace=False)
    m, k = flat // n + 1, flat % n + 1
    direct = seq.group.reduce(evaluate_direct(seq, m, k))[0]
    ok = seq.group.same_coset(pts[m - 1, k - 1], direct, tol)
    if not np.all(ok):
        raise ArithmeticError("incremental orbit drifted from the closed form")


@dataclass(frozen=True)
class Progression:
    """start, start + step, ..., start + (count-1) step inside [N]."""

    start: int
    step: int
    count: int

    def mask(self, n: int) -> np.ndarray:
        vals = self.start + self.step * np.arange(self.count)
        if self.count < 1 or vals.min() < 1 or vals.max() > n:
            raise ValueError(f"progression {self} does not fit in [1, {n}]")
        out = np.zeros(n, dtype=bool)
        out[vals - 1] = True
        return out


@dataclass(frozen=True)
class HorizontalExp:
    """F(x; y) = e(k . x), a horizontal character read as a function on X."""

    k: tuple

    @property
    def lipschitz(self) -> float:
        return 2 * math.pi * sum(abs(v) for v in self.k)

    def raw(self, pts: np.ndarray) -> np.ndarray:
        return np.exp(2j * np.pi * (pts[..., :-1] @ np.asarray(self.k, float)))

    def __call__(self, pts: np.ndarray) -> np.ndarray:
        if not any(self.k):
            raise ValueError("test function needs a nonzero frequency")
        return self.raw(pts) / max(1.0, self.lipschitz)


@dataclass(frozen=True)
class VerticalNilchar:
    """F(x; y) = e(k y) prod_i sin^2(pi x_i); vanishes where the fundamental domain is glued."""

    k: int
    s: int = field(default=2)

    @property
    def lipschitz(self) -> float:
        return 2 * math.pi * abs(self.k) + math.pi * self.s

    def raw(self, pts: np.ndarray) -> np.ndarray:
        bump = np.prod(np.sin(np.pi * pts[..., :-1]) ** 2, axis=-1)
        return np.exp(2j * np.pi * self.k * pts[..., -1]) * bump

    def __call__(self, pts: np.ndarray) -> np.ndarray:
        if self.k == 0:
            raise ValueError("test function needs a nonzero frequency")
        return self.raw(pts) / max(1.0, self.lipschitz)


def equid_defect(points: np.ndarray, test_fn, progressions=None) -> float:
    """|E_{(m,n) in [N]^2} 1_{P1 x P2}(m, n) F(g(m,n) e_X)| with F Lipschitz-normalized."""
    n1, n2 = points.shape[:2]
    vals = test_fn(points)
    if progressions is not None:
        p1, p2 = progressions
        mask = np.outer(p1.mask(n1) if p1 is not None else np.ones(n1, bool),
                        p2.mask(n2) if p2 is not None else np.ones(n2, bool))
        vals = np.where(mask, vals, 0)
    return float(abs(vals.sum()) / (n1 * n2))
