"""The torus grid R_Ñ = (Z/Ñ)^2, grid functions, Fourier analysis and smoothing kernels.

Points a + bi with 1 <= a, b <= Ñ are stored at array index (a mod Ñ, b mod Ñ),
so the corner Ñ + Ñi sits at [0, 0].  With this layout the normalized Fourier
transform is exactly ``dft2(values) / Ñ^2`` and spectrum index [k1, k2] is the
frequency (k1, k2) mod Ñ.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import sympy

from .fft import dft2
from .gint import GaussianInt


def dist_to_int(x):
    """The distance to the nearest integer, ||x|| in R/Z."""
    x = np.asarray(x, dtype=float)
    r = x - np.floor(x)
    out = np.minimum(r, 1.0 - r)
    return float(out) if out.ndim == 0 else out


def centred(k, n: int):
    """Representative of k mod n in (-n/2, n/2]."""
    r = np.mod(k, n)
    return np.where(r > n // 2, r - n, r) if np.ndim(r) else (r - n if r > n // 2 else int(r))


def ceil_inv_eps4(eps: float) -> int:
    """ceil(eps^-4), rounded first so that eps=0.5 gives 16 rather than 17."""
    if not 0 < eps:
        raise ValueError("eps must be positive")
    return math.ceil(round(eps ** -4, 9))


@dataclass(frozen=True)
class TorusGrid:
    ell: int
    n: int
    n_tilde: int
    relaxed: bool = False

    def __post_init__(self):
        if not sympy.isprime(self.n_tilde):
            raise ValueError(f"grid size {self.n_tilde} is not prime")

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n_tilde, self.n_tilde)

    def coords(self) -> tuple[np.ndarray, np.ndarray]:
        """Integer arrays (a, b) in 1..Ñ matching the storage layout."""
        nt = self.n_tilde
        idx = np.arange(nt)
        lab = np.where(idx == 0, nt, idx)
        return np.meshgrid(lab, lab, indexing="ij")

    def box_mask(self, n: int | None = None) -> np.ndarray:
        """Indicator of R_N = {1..N}^2 inside R_Ñ."""
        n = self.n if n is None else n
        a, b = self.coords()
        return (a <= n) & (b <= n)


def make_grid(ell: int, n: int, relaxed: bool = False) -> TorusGrid:
    if ell < 1 or n < 1:
        raise ValueError("ell and n must be >= 1")
    floor = n if relaxed else 100 * ell * n
    return TorusGrid(ell, n, int(sympy.nextprime(floor)), relaxed)


@dataclass(frozen=True, eq=False)
class GridFunction:
    grid: TorusGrid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.array(self.values, dtype=complex)
        if v.shape != self.grid.shape:
            raise ValueError(f"values shape {v.shape} does not match grid {self.grid.shape}")
        if not np.isfinite(v).all():
            raise ValueError("grid function values must be finite")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    @classmethod
    def from_callable(cls, grid: TorusGrid, fn) -> "GridFunction":
        """Build from a vectorized fn(a, b) with a, b the 1..Ñ labels."""
        a, b = grid.coords()
        return cls(grid, fn(a, b))

    @classmethod
    def zeros(cls, grid: TorusGrid) -> "GridFunction":
        return cls(grid, np.zeros(grid.shape))

    def at(self, a: int, b: int) -> complex:
        nt = self.grid.n_tilde
        return complex(self.values[a % nt, b % nt])

    def shift(self, beta1: int, beta2: int) -> "GridFunction":
        """alpha -> f(alpha + beta)."""
        return GridFunction(self.grid, np.roll(self.values, (-beta1, -beta2), axis=(0, 1)))

    def mean(self) -> complex:
        return complex(self.values.mean())

    def _check(self, other: "GridFunction"):
        if other.grid.n_tilde != self.grid.n_tilde:
            raise ValueError("grid mismatch")

    def __add__(self, other: "GridFunction") -> "GridFunction":
        self._check(other)
        return GridFunction(self.grid, self.values + other.values)

    def __sub__(self, other: "GridFunction") -> "GridFunction":
        self._check(other)
        return GridFunction(self.grid, self.values - other.values)

    def __mul__(self, other) -> "GridFunction":
        if isinstance(other, GridFunction):
            self._check(other)
            return GridFunction(self.grid, self.values * other.values)
        return GridFunction(self.grid, self.values * other)

    __rmul__ = __mul__

    def conj(self) -> "GridFunction":
        return GridFunction(self.grid, np.conj(self.values))


def character(grid: TorusGrid, xi1: int, xi2: int) -> GridFunction:
    """alpha -> e((alpha_1 xi_1 + alpha_2 xi_2)/Ñ)."""
    nt = grid.n_tilde
    return GridFunction.from_callable(
        grid, lambda a, b: np.exp(2j * np.pi * ((a * xi1 + b * xi2) % nt) / nt)
    )


def fourier(f: GridFunction) -> GridFunction:
    nt = f.grid.n_tilde
    return GridFunction(f.grid, dft2(f.values) / (nt * nt))


def inverse_fourier(spec: GridFunction) -> GridFunction:
    return GridFunction(spec.grid, dft2(spec.values, inverse=True))


def convolve(f: GridFunction, g: GridFunction) -> GridFunction:
    """(f*g)(alpha) = E_beta f(alpha - beta) g(beta), through the spectrum."""
    f._check(g)
    nt = f.grid.n_tilde
    return GridFunction(f.grid, dft2(dft2(f.values) * dft2(g.values), inverse=True) / nt ** 4)


def convolve_direct(f: GridFunction, g: GridFunction) -> GridFunction:
    """O(Ñ^4) reference convolution."""
    f._check(g)
    nt = f.grid.n_tilde
    out = np.zeros(f.grid.shape, dtype=complex)
    for b1 in range(nt):
        for b2 in range(nt):
            out += np.roll(f.values, (b1, b2), axis=(0, 1)) * g.values[b1, b2]
    return GridFunction(f.grid, out / (nt * nt))


def dilate(f: GridFunction, gamma) -> GridFunction:
    """beta -> f(gamma * beta), the product reduced mod Ñ in each coordinate."""
    gamma = GaussianInt.of(gamma)
    nt = f.grid.n_tilde
    if gamma.norm_sq % nt == 0:
        raise ValueError(f"non-invertible dilation: Ñ={nt} divides norm_sq({gamma})")
    idx = np.arange(nt)
    a, b = np.meshgrid(idx, idx, indexing="ij")
    ra = (gamma.re * a - gamma.im * b) % nt
    rb = (gamma.im * a + gamma.re * b) % nt
    return GridFunction(f.grid, f.values[ra, rb])


@dataclass(frozen=True, eq=False)
class Kernel:
    """A non-negative grid function with mean one."""

    base: GridFunction
    label: str = ""

    def __post_init__(self):
        v = self.base.values
        if np.abs(v.imag).max() > 1e-12:
            raise ValueError("kernel values must be real")
        if v.real.min() < 0:
            raise ValueError("kernel values must be non-negative")
        if abs(v.real.mean() - 1.0) > 1e-12:
            raise ValueError(f"kernel mean {v.real.mean()!r} is not 1")

    @property
    def grid(self) -> TorusGrid:
        return self.base.grid

    @property
    def values(self) -> np.ndarray:
        return self.base.values


def fejer_1d(nt: int, m: int) -> np.ndarray:
    """(1/m) (sin(pi m k/Ñ) / sin(pi k/Ñ))^2 for k = 0..Ñ-1, with value m at k = 0."""
    k = np.arange(nt)
    out = np.full(nt, float(m))
    t = np.pi * k[1:] / nt
    out[1:] = (np.sin(m * t) / np.sin(t)) ** 2 / m
    return out


def triangle_weights_1d(nt: int, m: int, dilation: int = 1) -> np.ndarray:
    """max(0, 1 - |centred(dilation * k)|/m) for k = 0..Ñ-1."""
    c = np.abs(centred(dilation * np.arange(nt), nt))
    return np.clip(1.0 - c / m, 0.0, None)


def fejer_kernel(grid: TorusGrid, m: int) -> Kernel:
    nt = grid.n_tilde
    if m < 1:
        raise ValueError("m must be >= 1")
    if nt <= 2 * m:
        raise ValueError(f"Fejer kernel of order {m} needs Ñ > {2 * m}, got {nt}")
    f1 = fejer_1d(nt, m)
    return Kernel(GridFunction(grid, np.outer(f1, f1)), f"fejer(m={m})")


def fejer_spectrum(grid: TorusGrid, m: int) -> np.ndarray:
    w = triangle_weights_1d(grid.n_tilde, m)
    return np.outer(w, w)


@dataclass(frozen=True)
class PhiParams:
    q: int
    v: int
    eps: float

    @property
    def ceil_eps(self) -> int:
        return ceil_inv_eps4(self.eps)

    @property
    def m(self) -> int:
        """Order of the underlying Fejer kernel, 2QV ceil(eps^-4)."""
        return 2 * self.q * self.v * self.ceil_eps

    @property
    def min_size_bound(self) -> int:
        """The kernel needs Ñ > 4QV ceil(eps^-4)."""
        return 4 * self.q * self.v * self.ceil_eps

    def check(self, nt: int):
        if math.gcd(self.q, nt) != 1:
            raise ValueError(f"gcd(Q={self.q}, Ñ={nt}) != 1")
        if nt <= self.min_size_bound:
            need = int(sympy.nextprime(self.min_size_bound))
            raise ValueError(
                f"phi kernel needs Ñ > 4QV*ceil(eps^-4) = {self.min_size_bound}; "
                f"got Ñ={nt}, minimal admissible Ñ is {need}"
            )


def phi_kernel(grid: TorusGrid, q: int, v: int, eps: float) -> Kernel:
    """alpha -> f_{m}(Q^-1 alpha mod Ñ) with m = 2QV ceil(eps^-4)."""
    params = PhiParams(q, v, eps)
    nt = grid.n_tilde
    params.check(nt)
    q_inv = pow(q, -1, nt)
    f1 = fejer_1d(nt, params.m)[(q_inv * np.arange(nt)) % nt]
    return Kernel(GridFunction(grid, np.outer(f1, f1)), f"phi(Q={q},V={v},eps={eps})")


def phi_spectrum(grid: TorusGrid, q: int, v: int, eps: float) -> np.ndarray:
    """Closed-form spectrum: triangle weight of the centred value of Q*xi in each coordinate."""
    params = PhiParams(q, v, eps)
    w = triangle_weights_1d(grid.n_tilde, params.m, q)
    return np.outer(w, w)


def phi_support(grid: TorusGrid, q: int, v: int, eps: float) -> np.ndarray:
    """Boolean mask of Xi = {xi : ||Q xi_i / Ñ|| < m/Ñ, i = 1, 2}."""
    params = PhiParams(q, v, eps)
    nt = grid.n_tilde
    c = np.abs(centred(q * np.arange(nt), nt)) < params.m
    return np.outer(c, c)
