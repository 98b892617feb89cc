"""Arbitrary-length DFT via Bluestein's chirp-z algorithm.

Grid sizes are prime, so a radix-2 transform does not apply directly.  The
chirp trick rewrites a length-n DFT as a circular convolution of length
m >= 2n-1 (a power of two), which numpy's FFT handles quickly.  Small sizes
use a dense DFT matrix.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

DIRECT_BELOW = 32
# bound on complex128 elements held per batch in the padded work buffer
_CHUNK_ELEMS = 1 << 24


@lru_cache(maxsize=32)
def _dft_matrix(n: int, sign: int) -> np.ndarray:
    k = np.arange(n)
    return np.exp(sign * 2j * np.pi * ((np.outer(k, k)) % n) / n)


@lru_cache(maxsize=32)
def _chirp(n: int, sign: int):
    k = np.arange(n, dtype=np.int64)
    # k^2 mod 2n keeps the phase argument small and exact
    w = np.exp(sign * 1j * np.pi * ((k * k) % (2 * n)) / n)
    m = 1 << int(2 * n - 1).bit_length()
    b = np.zeros(m, dtype=complex)
    b[:n] = np.conj(w)
    b[m - n + 1:] = np.conj(w[1:][::-1])
    return w, np.fft.fft(b), m


def dft_direct(x: np.ndarray, axis: int = -1, inverse: bool = False) -> np.ndarray:
    """Unnormalized DFT by matrix product (the O(n^2) reference)."""
    x = np.moveaxis(np.asarray(x, dtype=complex), axis, -1)
    mat = _dft_matrix(x.shape[-1], 1 if inverse else -1)
    return np.moveaxis(x @ mat, -1, axis)


def _bluestein_last(x: np.ndarray, sign: int) -> np.ndarray:
    n = x.shape[-1]
    w, fb, m = _chirp(n, sign)
    flat = x.reshape(-1, n)
    out = np.empty_like(flat)
    rows = max(1, _CHUNK_ELEMS // m)
    for start in range(0, flat.shape[0], rows):
        blk = flat[start:start + rows] * w
        conv = np.fft.ifft(np.fft.fft(blk, m, axis=-1) * fb, axis=-1)
        out[start:start + rows] = conv[:, :n] * w
    return out.reshape(x.shape)


def dft(x: np.ndarray, axis: int = -1, inverse: bool = False) -> np.ndarray:
    """Unnormalized DFT along one axis: X[k] = sum_j x[j] exp(-+2 pi i jk/n)."""
    x = np.moveaxis(np.asarray(x, dtype=complex), axis, -1)
    n = x.shape[-1]
    sign = 1 if inverse else -1
    if n < DIRECT_BELOW:
        out = x @ _dft_matrix(n, sign)
    elif n & (n - 1) == 0:
        out = np.fft.ifft(x, axis=-1) * n if inverse else np.fft.fft(x, axis=-1)
    else:
        out = _bluestein_last(np.ascontiguousarray(x), sign)
    return np.moveaxis(out, -1, axis)


def dft2(x: np.ndarray, inverse: bool = False) -> np.ndarray:
    """Unnormalized 2-D DFT over the last two axes."""
    return dft(dft(x, axis=-1, inverse=inverse), axis=-2, inverse=inverse)
