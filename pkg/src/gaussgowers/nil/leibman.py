"""Horizontal characters, smoothness norms of torus polynomials, and the
certificate search / constructive check linking small smoothness to bias.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from ..grid import dist_to_int
from .orbit import PolySeq2

# 2c + 2c^2 <= 1/(4 pi): every phase on the sub-box stays within half a radian of the start
LEIBMAN_C = 1.0 / 30.0
# Lipschitz constant of x -> e(t) per unit of frequency
LIP_PER_FREQ = 2 * math.pi


@dataclass(frozen=True)
class HorizontalCharacter:
    k: tuple

    def __post_init__(self):
        object.__setattr__(self, "k", tuple(int(v) for v in self.k))

    @property
    def norm(self) -> int:
        return sum(abs(v) for v in self.k)

    def __call__(self, g) -> np.ndarray:
        """eta(g) in R (not reduced); kills the vertical coordinate."""
        g = np.asarray(g, float)
        return g[..., :-1] @ np.asarray(self.k, float)


@dataclass(frozen=True)
class TorusPoly2:
    """p(m, n) = sum_j C(m, j1) C(n, j2) a_j with j1 + j2 <= 2, coefficients in R/Z."""

    coeffs: dict

    def __post_init__(self):
        clean = {}
        for j, a in self.coeffs.items():
            j = (int(j[0]), int(j[1]))
            if j[0] < 0 or j[1] < 0 or sum(j) > 2:
                raise ValueError(f"multi-index {j} outside degree 2")
            clean[j] = float(a) % 1.0
        object.__setattr__(self, "coeffs", clean)

    def __call__(self, m, n):
        m, n = np.asarray(m, float), np.asarray(n, float)
        out = np.zeros(np.broadcast(m, n).shape)
        for (j1, j2), a in self.coeffs.items():
            out = out + _binom(m, j1) * _binom(n, j2) * a
        return out


def _binom(t, j: int):
    if j == 0:
        return np.ones_like(t)
    if j == 1:
        return t
    return t * (t - 1) / 2


def smoothness_norm(p: TorusPoly2, n) -> float:
    """sup_{j != 0} N1^j1 N2^j2 ||a_j||; ``n`` is an int or a pair."""
    n1, n2 = (n, n) if np.isscalar(n) else n
    vals = [n1 ** j1 * n2 ** j2 * dist_to_int(a) for (j1, j2), a in p.coeffs.items() if (j1, j2) != (0, 0)]
    return float(max(vals, default=0.0))


def compose(eta: HorizontalCharacter, seq: PolySeq2) -> TorusPoly2:
    """eta o g: only the horizontal coefficients survive, since eta vanishes on G_2."""
    k = np.asarray(eta.k, float)
    if k.size != seq.group.s:
        raise ValueError("character dimension does not match the group")
    return TorusPoly2({
        (0, 0): float(k @ np.array(seq.g0.x)),
        (1, 0): float(k @ np.array(seq.g11.x)),
        (0, 1): float(k @ np.array(seq.g12.x)),
        (2, 0): 0.0,
        (1, 1): 0.0,
        (0, 2): 0.0,
    })


def characters_up_to(s: int, d: int):
    """All nonzero integer vectors of length s with l1 norm <= d, in a fixed order."""
    for k in itertools.product(range(-d, d + 1), repeat=s):
        if 0 < sum(abs(v) for v in k) <= d:
            yield HorizontalCharacter(k)


def leibman_search(seq: PolySeq2, n: int, d: int):
    """Smallest-smoothness character with 0 < ||eta|| <= D; None if that minimum exceeds D.

    Ties go to the smaller ||eta||, then to the lexicographically larger vector.
    """
    if d < 1:
        raise ValueError("D must be >= 1")
    best = None
    for eta in characters_up_to(seq.group.s, int(d)):
        val = smoothness_norm(compose(eta, seq), n)
        key = (val, eta.norm, tuple(-v for v in eta.k))
        if best is None or key < best[0]:
            best = (key, eta)
    if best is None or best[0][0] > d:
        return None
    return best[1], best[0][0]


@dataclass(frozen=True)
class LeibmanCheck:
    correlation: float
    bound: float
    box: tuple
    full_box_correlation: float

    def __iter__(self):
        return iter((self.correlation, self.bound))


def inverse_leibman_check(seq: PolySeq2, eta: HorizontalCharacter, d: float, n1: int, n2: int,
                          c: float = LEIBMAN_C) -> LeibmanCheck:
    """Average of e(eta(g(m, n))) on the sub-box [cN1/D] x [cN2/D], which must be >= 1/2.

    Also returns the non-equidistribution level c^2 / (4 C' D^3) with C' = 2 pi.
    """
    failures = []
    if eta.norm == 0:
        failures.append("eta must be nontrivial")
    if eta.norm > d:
        failures.append(f"||eta|| = {eta.norm} exceeds D = {d}")
    sm = smoothness_norm(compose(eta, seq), (n1, n2))
    if sm > d:
        failures.append(f"smoothness {sm:.6g} exceeds D = {d}")
    need = 8 * d / c
    if n1 < need or n2 < need:
        failures.append(f"N1, N2 must be >= 8D/c = {need:.6g}")
    if failures:
        raise ValueError("; ".join(failures))
    b1, b2 = int(c * n1 / d), int(c * n2 / d)
    m, n = np.meshgrid(np.arange(1, b1 + 1), np.arange(1, b2 + 1), indexing="ij")
    phase = np.exp(2j * np.pi * (seq.horizontal(m, n) @ np.asarray(eta.k, float)))
    corr = float(abs(phase.mean()))
    full = float(abs(phase.sum()) / (n1 * n2))
    if corr < 0.5:
        raise AssertionError(f"sub-box correlation {corr} < 1/2 despite the preconditions")
    return LeibmanCheck(corr, c * c / (4 * LIP_PER_FREQ * d ** 3), (b1, b2), full)
