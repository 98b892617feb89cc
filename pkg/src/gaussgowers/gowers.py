"""Gowers uniformity norms U^1..U^3 on R_Ñ.

U^2 uses the spectral identity ||f||_{U^2}^4 = sum |f^(xi)|^4.  U^3 averages
that fast path over all Ñ^2 multiplicative derivatives f_beta * conj(f),
batched through the 2-D transform.  A brute-force evaluator of the inductive
definition is kept for small grids as a cross-check.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .fft import dft2
from .gint import GaussianInt
from .grid import GridFunction, TorusGrid, fourier

ROUNDOFF = 1e-12
_BATCH_ELEMS = 1 << 22


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("GG_THREADS", "1")))
    except ValueError:
        return 1


def _root(x: float, k: int) -> float:
    if x < -ROUNDOFF:
        raise ArithmeticError(f"negative power sum {x!r} under a {k}-th root")
    return max(x, 0.0) ** (1.0 / k)


def u2_fourth(values: np.ndarray) -> np.ndarray:
    """sum_xi |f^(xi)|^4 for a stack of grid arrays (last two axes)."""
    nt = values.shape[-1]
    spec = np.abs(dft2(values)) / (nt * nt)
    return ((spec * spec) ** 2).sum(axis=(-2, -1))


def _half_shifts(nt: int) -> tuple[np.ndarray, np.ndarray]:
    """Representatives of {beta, -beta} with weights 1 (beta=0) or 2."""
    b1, b2 = np.meshgrid(np.arange(nt), np.arange(nt), indexing="ij")
    flat = b1.ravel() * nt + b2.ravel()
    neg = ((-b1) % nt).ravel() * nt + ((-b2) % nt).ravel()
    keep = flat <= neg
    weights = np.where(flat[keep] == neg[keep], 1.0, 2.0)
    return flat[keep], weights


def u3_eighth(f: np.ndarray) -> float:
    """E_beta ||f_beta conj f||_{U^2}^4, using |spec(g_-beta)| = |spec(g_beta)|."""
    nt = f.shape[0]
    shifts, weights = _half_shifts(nt)
    batch = max(1, _BATCH_ELEMS // (nt * nt))
    # flat index trick: f_beta(alpha) = f[(alpha + beta) mod Ñ]
    idx = np.arange(nt)
    cf = np.conj(f)

    def work(sl):
        sh = shifts[sl]
        r1 = (idx[None, :] + (sh // nt)[:, None]) % nt
        r2 = (idx[None, :] + (sh % nt)[:, None]) % nt
        stack = f[r1[:, :, None], r2[:, None, :]] * cf
        return float(np.dot(u2_fourth(stack), weights[sl]))

    chunks = [slice(i, i + batch) for i in range(0, len(shifts), batch)]
    workers = thread_count()
    if workers > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(workers) as ex:
            parts = list(ex.map(work, chunks))
    else:
        parts = [work(c) for c in chunks]
    return float(np.sum(parts)) / (nt * nt)


def gowers_norm(f: GridFunction, d: int) -> float:
    if d not in (1, 2, 3):
        raise ValueError("degree must be 1..3")
    v = f.values
    if d == 1:
        return abs(complex(v.mean()))
    if d == 2:
        return _root(float(u2_fourth(v)), 4)
    return _root(u3_eighth(v), 8)


def gowers_norm_bruteforce(f: GridFunction, d: int) -> float:
    """The inductive definition evaluated literally; intended for Ñ <= 11."""
    if d not in (1, 2, 3):
        raise ValueError("degree must be 1..3")
    nt = f.grid.n_tilde
    if nt > 11:
        raise ValueError("brute-force evaluator is limited to Ñ <= 11")

    def power(h: np.ndarray, k: int) -> float:
        # returns ||h||_{U^k}^(2^k)
        if k == 1:
            return abs(complex(h.mean())) ** 2
        total = 0.0
        for b1 in range(nt):
            for b2 in range(nt):
                hb = np.roll(h, (-b1, -b2), axis=(0, 1))
                total += power(hb * np.conj(h), k - 1)
        return total / (nt * nt)

    return _root(power(f.values, d), 2 ** d)


def _shift_by(values: np.ndarray, s1: int, s2: int) -> np.ndarray:
    return np.roll(values, (-s1, -s2), axis=(0, 1))


def von_neumann_diagnostic(funcs, gammas, grid: TorusGrid) -> tuple[float, float, float]:
    """(lhs, min_j ||a_j||_{U^3}^{1/3}, 10/Ñ) for the four-term pattern alpha + gamma_j beta.

    lhs = |E_{alpha, beta in R_Ñ} 1_{R_N}(beta) prod_j a_j(alpha + gamma_j beta)|.
    The unspecified constant means the inequality itself is not asserted.
    """
    funcs = list(funcs)
    gammas = [GaussianInt.of(g) for g in gammas]
    if len(funcs) != len(gammas):
        raise ValueError("need one dilation per function")
    for a in funcs:
        if a.grid.n_tilde != grid.n_tilde:
            raise ValueError("grid mismatch")
        if np.abs(a.values).max() > 1 + 1e-12:
            raise ValueError("functions must be bounded by 1 in modulus")
    nt, n = grid.n_tilde, grid.n
    total = 0j
    for b1 in range(1, n + 1):
        for b2 in range(1, n + 1):
            prod = np.ones(grid.shape, dtype=complex)
            for a, g in zip(funcs, gammas):
                s1 = (g.re * b1 - g.im * b2) % nt
                s2 = (g.im * b1 + g.re * b2) % nt
                prod *= _shift_by(a.values, s1, s2)
            total += prod.mean()
    lhs = abs(total) / (nt * nt)
    distinct = {id(a): a for a in funcs}.values()
    min_u3 = min(gowers_norm(a, 3) ** (1.0 / 3.0) for a in distinct)
    return lhs, min_u3, 10.0 / nt
