"""Order-2 nilpotent groups R^s x R with the law

    (x; y) (x'; y') = (x + x'; y + y' + sum_{j<i} B_ij x_i x'_j)

for an integer skew-symmetric B.  The lattice is Gamma = Z^s x Z and the
vertical subgroup G_2 = {0}^s x R is central.

Most functions work on packed arrays of shape (..., s + 1), last entry y, so
orbits can be processed in bulk.  ``NilElement`` wraps a single point.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import sympy


@dataclass(frozen=True, eq=False)
class NilGroup:
    b: np.ndarray
    s_prime: int | None = None

    def __post_init__(self):
        b = np.array(self.b)
        if b.ndim != 2 or b.shape[0] != b.shape[1] or b.shape[0] < 1:
            raise ValueError("B must be a non-empty square matrix")
        if not np.all(b == np.round(b)):
            raise ValueError("B must have integer entries")
        b = b.astype(np.int64)
        if not np.array_equal(b.T, -b):
            raise ValueError("B must be skew-symmetric")
        s = b.shape[0]
        nz = [i for i in range(s) if b[i].any()]
        sp = (max(nz) + 1 if nz else 0) if self.s_prime is None else int(self.s_prime)
        if b[sp:].any() or b[:, sp:].any():
            raise ValueError(f"rows/columns beyond s'={sp} must vanish")
        if sp and sympy.Matrix(b[:sp, :sp].tolist()).det() == 0:
            raise ValueError("top-left block B_0 must be invertible")
        b.flags.writeable = False
        low = np.tril(b, -1).astype(float)
        low.flags.writeable = False
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "s_prime", sp)
        object.__setattr__(self, "_low", low)

    @property
    def s(self) -> int:
        return self.b.shape[0]

    @property
    def b0(self) -> np.ndarray:
        return self.b[: self.s_prime, : self.s_prime]

    @classmethod
    def heisenberg(cls) -> "NilGroup":
        return cls(np.array([[0, -1], [1, 0]]))

    @classmethod
    def abelian(cls, s: int) -> "NilGroup":
        return cls(np.zeros((s, s), dtype=np.int64))

    @classmethod
    def from_json(cls, text_or_dict) -> "NilGroup":
        d = json.loads(text_or_dict) if isinstance(text_or_dict, str) else text_or_dict
        return cls(np.array(d["B"]), d.get("s_prime"))

    def to_json(self) -> dict:
        return {"s": self.s, "B": self.b.tolist(), "s_prime": self.s_prime}

    # packed-array group law

    def beta(self, x, xp):
        """sum_{j<i} B_ij x_i x'_j, broadcasting over leading axes."""
        return np.einsum("...i,ij,...j->...", np.asarray(x, float), self._low, np.asarray(xp, float))

    def form(self, x, xp):
        """x B x'^T, the vertical part of the commutator [x, x']."""
        return np.einsum("...i,ij,...j->...", np.asarray(x, float), self.b.astype(float), np.asarray(xp, float))

    def mul(self, g, h):
        g, h = np.asarray(g, float), np.asarray(h, float)
        gx, hx = g[..., :-1], h[..., :-1]
        y = g[..., -1] + h[..., -1] + self.beta(gx, hx)
        return np.concatenate([gx + hx, y[..., None]], axis=-1)

    def inv(self, g):
        g = np.asarray(g, float)
        x = g[..., :-1]
        y = -g[..., -1] + self.beta(x, x)
        return np.concatenate([-x, y[..., None]], axis=-1)

    def identity(self):
        return np.zeros(self.s + 1)

    def commutator(self, g, h):
        """[g, h] = g h g^-1 h^-1 = (gh)(hg)^-1."""
        return self.mul(self.mul(g, h), self.inv(self.mul(h, g)))

    def power(self, g, t):
        """g^t = (t x; t y + C(t,2) beta(x, x)); t may be an integer array."""
        g = np.asarray(g, float)
        t = np.asarray(t, float)
        x = g[..., :-1]
        tx = t[..., None] * x
        y = t * g[..., -1] + t * (t - 1) / 2 * self.beta(x, x)
        return np.concatenate([tx, np.asarray(y)[..., None]], axis=-1)

    def conjugate(self, g, h):
        """g h g^-1 = (h_x; h_y + g_x B h_x^T)."""
        g, h = np.asarray(g, float), np.asarray(h, float)
        y = h[..., -1] + self.form(g[..., :-1], h[..., :-1])
        return np.concatenate([np.broadcast_to(h[..., :-1], np.broadcast(g, h).shape[:-1] + (self.s,)),
                               np.asarray(y)[..., None]], axis=-1)

    def reduce(self, g):
        """Split g = r * gamma with r in [0,1)^{s+1} and gamma in Gamma; returns (r, gamma)."""
        g = np.asarray(g, float)
        x = g[..., :-1]
        k, u = _split_floor(x)
        v = g[..., -1] - self.beta(u, k)
        m, w = _split_floor(v)
        r = np.concatenate([u, np.asarray(w)[..., None]], axis=-1)
        gamma = np.concatenate([k, m[..., None]], axis=-1)
        return r, gamma

    def in_lattice(self, g, tol: float = 1e-9):
        g = np.asarray(g, float)
        return np.all(np.abs(g - np.round(g)) <= tol, axis=-1)

    def same_coset(self, g, h, tol: float = 1e-9):
        """g Gamma == h Gamma, i.e. g^-1 h in Gamma."""
        return self.in_lattice(self.mul(self.inv(g), h), tol)

    def size(self, g):
        return np.abs(np.asarray(g, float)).max(axis=-1)

    def dist(self, g, h):
        """max(|g h^-1|, |h g^-1|) with the sup norm on coordinates."""
        return np.maximum(self.size(self.mul(g, self.inv(h))), self.size(self.mul(h, self.inv(g))))


def _split_floor(x):
    """(k, x - k) with k integral and the fraction in [0, 1), even when x is a tiny negative."""
    k = np.floor(x)
    u = x - k
    wrap = u >= 1.0
    return k + wrap, np.where(wrap, 0.0, u)


@dataclass(frozen=True)
class NilElement:
    x: tuple
    y: float

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(float(v) for v in self.x))
        object.__setattr__(self, "y", float(self.y))
        if not np.all(np.isfinite(self.packed())):
            raise ValueError("coordinates must be finite")

    @classmethod
    def unpack(cls, arr) -> "NilElement":
        arr = np.asarray(arr, float)
        return cls(tuple(arr[:-1]), arr[-1])

    @classmethod
    def vertical(cls, s: int, y: float) -> "NilElement":
        return cls((0.0,) * s, y)

    def packed(self) -> np.ndarray:
        return np.array(self.x + (self.y,))


def mul(group: NilGroup, g: NilElement, h: NilElement) -> NilElement:
    return NilElement.unpack(group.mul(g.packed(), h.packed()))


def inv(group: NilGroup, g: NilElement) -> NilElement:
    return NilElement.unpack(group.inv(g.packed()))


def reduce(group: NilGroup, g: NilElement) -> tuple[NilElement, NilElement]:
    r, gamma = group.reduce(g.packed())
    return NilElement.unpack(r), NilElement.unpack(gamma)


def lambda_membership(m, b0) -> bool:
    """Exact test of M^T B0 M == B0 over the rationals."""
    m = [[Fraction(v) for v in row] for row in np.asarray(m, dtype=object).tolist()]
    b = [[Fraction(v) for v in row] for row in np.asarray(b0, dtype=object).tolist()]
    k = len(b)
    if len(m) != k or any(len(row) != k for row in m):
        raise ValueError("M and B0 must have matching square shapes")
    bm = [[sum(b[i][l] * m[l][j] for l in range(k)) for j in range(k)] for i in range(k)]
    mtbm = [[sum(m[l][i] * bm[l][j] for l in range(k)) for j in range(k)] for i in range(k)]
    return mtbm == b
