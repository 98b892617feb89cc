import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_function
from gaussgowers.fft import dft, dft2, dft_direct
from gaussgowers.gint import GaussianInt
from gaussgowers.grid import (
    GridFunction,
    Kernel,
    PhiParams,
    TorusGrid,
    ceil_inv_eps4,
    centred,
    character,
    convolve,
    convolve_direct,
    dilate,
    dist_to_int,
    fejer_kernel,
    fejer_spectrum,
    fourier,
    inverse_fourier,
    make_grid,
    phi_kernel,
    phi_spectrum,
    phi_support,
)


@pytest.mark.parametrize("n", [1, 2, 5, 31, 32, 37, 101, 257, 1009])
def test_dft_matches_direct(n):
    rng = np.random.default_rng(n)
    x = rng.normal(size=(3, n)) + 1j * rng.normal(size=(3, n))
    for inverse in (False, True):
        assert np.allclose(dft(x, inverse=inverse), dft_direct(x, inverse=inverse), atol=1e-9 * n)


@pytest.mark.parametrize("n", [37, 101, 5003])
def test_dft_matches_numpy(n):
    x = np.random.default_rng(0).normal(size=n) + 0j
    err = np.abs(dft(x) - np.fft.fft(x)).max()
    assert err <= 1e-9 * math.sqrt(n) * np.abs(x).sum() / n + 1e-9


def test_dft_inverse_round_trip():
    x = np.random.default_rng(1).normal(size=(53, 53)) + 0j
    assert np.allclose(dft2(dft2(x), inverse=True) / 53**2, x, atol=1e-12)


def test_dft_axis_argument():
    x = np.random.default_rng(2).normal(size=(7, 11)) + 0j
    assert np.allclose(dft(x, axis=0), np.fft.fft(x, axis=0))


def test_grid_requires_prime():
    with pytest.raises(ValueError, match="not prime"):
        TorusGrid(1, 10, 12)
    g = make_grid(1, 50)
    assert g.n_tilde == 5003 and not g.relaxed
    assert make_grid(1, 50, relaxed=True).n_tilde == 53
    assert make_grid(2, 3).n_tilde == 601


def test_layout_labels():
    g = make_grid(1, 4, relaxed=True)
    a, b = g.coords()
    assert a[0, 0] == 5 and b[0, 0] == 5 and a[1, 2] == 1 and b[1, 2] == 2
    assert g.box_mask().sum() == 16
    f = GridFunction.from_callable(g, lambda a, b: a + 10 * b)
    assert f.at(3, 5) == 53
    assert f.shift(1, 0).at(2, 3) == f.at(3, 3)


def test_grid_function_is_read_only():
    f = GridFunction.zeros(make_grid(1, 4, relaxed=True))
    with pytest.raises(ValueError):
        f.values[0, 0] = 1
    with pytest.raises(ValueError, match="finite"):
        GridFunction(f.grid, np.full(f.grid.shape, np.nan))


def test_character_spectrum_is_delta():
    g = make_grid(1, 10, relaxed=True)
    spec = fourier(character(g, 3, 7)).values
    expected = np.zeros(g.shape)
    expected[3, 7] = 1
    assert np.allclose(spec, expected, atol=1e-12)


def test_fourier_of_box_indicator_at_zero():
    g = make_grid(1, 10)
    box = GridFunction(g, g.box_mask().astype(float))
    assert fourier(box).values[0, 0] == pytest.approx(100 / 1009**2)


@pytest.mark.parametrize("nt", [7, 11])
def test_parseval_and_inverse(nt, rng):
    for _ in range(10):
        f = random_function(nt, rng)
        spec = fourier(f)
        assert abs(np.mean(np.abs(f.values) ** 2) - np.sum(np.abs(spec.values) ** 2)) <= 1e-10
        assert np.abs(inverse_fourier(spec).values - f.values).max() <= 1e-10


@pytest.mark.parametrize("nt", [7, 11])
def test_convolution_theorem(nt, rng):
    f, g = random_function(nt, rng), random_function(nt, rng)
    fg = convolve(f, g)
    assert np.abs(fg.values - convolve_direct(f, g).values).max() <= 1e-10
    assert np.abs(fourier(fg).values - fourier(f).values * fourier(g).values).max() <= 1e-10


def test_dilation():
    g = make_grid(1, 6, relaxed=True)
    f = GridFunction.from_callable(g, lambda a, b: a + 100 * b)
    d = dilate(f, GaussianInt(1, 1))
    # (1+i)(2+3i) = -1+5i
    assert d.at(2, 3) == f.at(-1, 5)
    assert np.array_equal(dilate(f, 1).values, f.values)
    with pytest.raises(ValueError, match="non-invertible"):
        dilate(f, GaussianInt(7))


@given(st.floats(-1e6, 1e6, allow_nan=False))
def test_dist_to_int_range(x):
    d = dist_to_int(x)
    assert 0 <= d <= 0.5
    assert d == pytest.approx(dist_to_int(x + 3), abs=1e-6)


@given(st.integers(-10**6, 10**6), st.integers(2, 1000))
def test_centred_representative(k, n):
    c = centred(k, n)
    assert (c - k) % n == 0
    assert -n / 2 < c <= n / 2


def test_ceil_inv_eps4():
    assert ceil_inv_eps4(0.5) == 16
    assert ceil_inv_eps4(0.3) == 124
    assert ceil_inv_eps4(1.0) == 1
    with pytest.raises(ValueError):
        ceil_inv_eps4(0)


def test_fejer_kernel_properties():
    g = make_grid(1, 1)  # Ñ = 101
    for m in (1, 3, 10, 50):
        k = fejer_kernel(g, m)
        assert k.values.real.min() >= 0
        assert abs(k.values.real.mean() - 1) <= 1e-10
        assert np.abs(fourier(k.base).values - fejer_spectrum(g, m)).max() <= 1e-10
    with pytest.raises(ValueError):
        fejer_kernel(g, 51)


def test_kernel_validation():
    g = make_grid(1, 4, relaxed=True)
    with pytest.raises(ValueError, match="non-negative"):
        Kernel(GridFunction(g, np.full(g.shape, -1.0)))
    with pytest.raises(ValueError, match="mean"):
        Kernel(GridFunction(g, np.full(g.shape, 2.0)))
    with pytest.raises(ValueError, match="real"):
        Kernel(GridFunction(g, np.full(g.shape, 1 + 1j)))


@pytest.mark.parametrize("q", [1, 2, 6])
def test_phi_kernel_closed_form(q):
    g = make_grid(1, 1)
    eps = 1.0
    k = phi_kernel(g, q, 1, eps)
    assert k.values.real.min() >= 0 and abs(k.values.real.mean() - 1) <= 1e-10
    spec = phi_spectrum(g, q, 1, eps)
    assert np.abs(fourier(k.base).values - spec).max() <= 1e-10
    assert np.array_equal(phi_support(g, q, 1, eps), spec > 0)


def test_phi_monotone_in_eps():
    g = make_grid(1, 10)  # Ñ = 1009
    for q, v in [(1, 1), (2, 1), (1, 2)]:
        wide = phi_spectrum(g, q, v, 0.6)
        narrow = phi_spectrum(g, q, v, 0.9)
        assert (narrow >= 0).all()
        assert (wide >= narrow - 1e-15).all()


def test_phi_preconditions():
    g53 = make_grid(1, 50, relaxed=True)
    with pytest.raises(ValueError, match="minimal admissible Ñ is 499"):
        phi_kernel(g53, 1, 1, 0.3)
    with pytest.raises(ValueError, match="gcd"):
        phi_kernel(make_grid(1, 1), 101, 1, 1.0)
    assert PhiParams(2, 3, 0.5).m == 2 * 2 * 3 * 16
