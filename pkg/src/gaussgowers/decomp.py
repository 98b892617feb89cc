"""U^2 structure/uniform splitting chi_N = chi_s + chi_u via the phi kernel."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .fft import dft2
from .gowers import gowers_norm
from .grid import (
    GridFunction,
    PhiParams,
    TorusGrid,
    centred,
    convolve,
    fourier,
    phi_kernel,
    phi_spectrum,
    phi_support,
)
from .multfn import MultiplicativeSpec, embed

DEFAULT_Q_CAP = 7


@dataclass(frozen=True)
class QVEstimate:
    q: int
    v: int
    w_table: list
    uniform: bool
    peak_count: int

    def __iter__(self):
        # allows ``q, v, table = estimate_qv(...)``
        return iter((self.q, self.v, self.w_table))


def family_spectrum_max(family, grid: TorusGrid) -> np.ndarray:
    """Pointwise max over the family of |chi_N^(xi)|."""
    if not family:
        raise ValueError("family must be non-empty")
    out = np.zeros(grid.shape)
    for chi in family:
        np.maximum(out, np.abs(fourier(embed(chi, grid)).values), out=out)
    return out


def estimate_qv(family, grid: TorusGrid, eps: float, q_cap: int = DEFAULT_Q_CAP,
                spectrum_max: np.ndarray | None = None) -> QVEstimate:
    """Pick Q among 1!, ..., cap! minimizing the large-spectrum spread, then V.

    The large spectrum is A = {xi : max_family |chi_N^(xi)| >= eps^2}.  For each
    q = k!, W(q) = max over A and both coordinates of N ||q xi_i / Ñ||.  Q is the
    first minimizer.  V is the smallest integer with |centred(Q xi_i)| < QV on A,
    which is what puts A inside the region where the kernel spectrum is near 1.
    """
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    nt, n = grid.n_tilde, grid.n
    mag = family_spectrum_max(family, grid) if spectrum_max is None else spectrum_max
    k1, k2 = np.nonzero(mag >= eps * eps)
    coords = np.concatenate([k1, k2]).astype(np.int64)
    table = []
    for k in range(1, q_cap + 1):
        q = math.factorial(k)
        if coords.size:
            w = n * float(np.max(np.abs(centred(q * coords, nt)))) / nt
        else:
            w = 0.0
        table.append({"k": k, "q": q, "w": w})
    if not coords.size:
        return QVEstimate(1, 1, table, True, 0)
    best = min(table, key=lambda row: (row["w"], row["k"]))
    q = best["q"]
    spread = int(np.max(np.abs(centred(q * coords, nt))))
    return QVEstimate(q, 1 + spread // q, table, False, int(k1.size))


@dataclass(eq=False)
class DecompositionReport:
    q: int
    v: int
    r: float
    eps: float
    chi_s: GridFunction = field(repr=False)
    chi_u: GridFunction = field(repr=False)
    periodicity_residual: float
    u2_of_u: float
    chi_n: GridFunction = field(repr=False)
    label: str = ""

    @property
    def grid(self) -> TorusGrid:
        return self.chi_s.grid

    def scalars(self) -> dict:
        g = self.grid
        return {
            "chi": self.label,
            "n": g.n,
            "n_tilde": g.n_tilde,
            "relaxed": g.relaxed,
            "q": self.q,
            "v": self.v,
            "r": self.r,
            "eps": self.eps,
            "periodicity_residual": self.periodicity_residual,
            "periodicity_bound": self.r / g.n,
            "u2_of_u": self.u2_of_u,
        }


def periodicity_residual(f: GridFunction, q: int) -> float:
    """max over alpha of |f(alpha + Q) - f(alpha)| and |f(alpha + Qi) - f(alpha)|."""
    v = f.values
    d1 = np.abs(np.roll(v, -q, axis=0) - v).max()
    d2 = np.abs(np.roll(v, -q, axis=1) - v).max()
    return float(max(d1, d2))


def structure_bound(grid: TorusGrid, q: int, v: int, eps: float) -> float:
    """R = |Xi| * 4 pi Q V ceil(eps^-4)."""
    params = PhiParams(q, v, eps)
    size = int(phi_support(grid, q, v, eps).sum())
    return size * 4 * math.pi * q * v * params.ceil_eps


def decompose(chi: MultiplicativeSpec, grid: TorusGrid, eps: float, q: int, v: int,
              chi_n: GridFunction | None = None) -> DecompositionReport:
    PhiParams(q, v, eps).check(grid.n_tilde)
    chi_n = embed(chi, grid) if chi_n is None else chi_n
    # chi_s = chi_N * phi computed through the closed-form kernel spectrum
    spec = dft2(chi_n.values) * phi_spectrum(grid, q, v, eps)
    chi_s = GridFunction(grid, dft2(spec, inverse=True) / grid.n_tilde ** 2)
    chi_u = chi_n - chi_s
    return DecompositionReport(
        q=q,
        v=v,
        r=structure_bound(grid, q, v, eps),
        eps=eps,
        chi_s=chi_s,
        chi_u=chi_u,
        periodicity_residual=periodicity_residual(chi_s, q),
        u2_of_u=gowers_norm(chi_u, 2),
        chi_n=chi_n,
        label=getattr(chi, "label", ""),
    )


def decompose_via_kernel(chi_n: GridFunction, q: int, v: int, eps: float) -> GridFunction:
    """Structured part by explicit convolution with the phi kernel (cross-check path)."""
    return convolve(chi_n, phi_kernel(chi_n.grid, q, v, eps).base)


def u3_probe(report: DecompositionReport) -> float:
    return gowers_norm(report.chi_u, 3)
