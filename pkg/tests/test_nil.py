import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gaussgowers.nil import (
    ContainmentError,
    HorizontalCharacter,
    HorizontalExp,
    NilElement,
    NilGroup,
    PolySeq2,
    Progression,
    TorusPoly2,
    VerticalNilchar,
    compose,
    equid_defect,
    evaluate_direct,
    good_pair_check,
    inverse_leibman_check,
    lambda_membership,
    leibman_search,
    mul,
    orbit,
    orbit_direct,
    rational_smooth_periodic_check,
    reduce,
    smoothness_norm,
    subgroup_type,
    theta_lambda,
)
from gaussgowers.nil.leibman import LEIBMAN_C

H = NilGroup.heisenberg()
coord = st.floats(-5, 5, allow_nan=False)
heis_elem = st.lists(coord, min_size=3, max_size=3).map(np.array)


def random_group(rng, s=3):
    a = rng.integers(-2, 3, size=(2, 2))
    b = np.zeros((s, s), dtype=int)
    b[0, 1], b[1, 0] = 1 + abs(a[0, 0]), -(1 + abs(a[0, 0]))
    return NilGroup(b)


def random_seq(rng, group=H, vertical=True):
    s = group.s

    def el():
        return NilElement.unpack(rng.random(s + 1) * 4 - 2)

    def vert():
        return NilElement.vertical(s, rng.random() if vertical else 0.0)

    return PolySeq2(group, el(), el(), el(), vert(), vert(), vert())


# group law


def test_group_validation():
    with pytest.raises(ValueError, match="skew"):
        NilGroup(np.array([[0, 1], [1, 0]]))
    with pytest.raises(ValueError, match="integer"):
        NilGroup(np.array([[0, 0.5], [-0.5, 0]]))
    with pytest.raises(ValueError, match="invertible"):
        NilGroup(np.array([[0, 1, 0], [-1, 0, 0], [0, 0, 0]]), s_prime=3)
    g = NilGroup(np.array([[0, 2, 0], [-2, 0, 0], [0, 0, 0]]))
    assert g.s == 3 and g.s_prime == 2
    assert NilGroup.abelian(2).s_prime == 0
    assert NilGroup.from_json(H.to_json()).to_json() == H.to_json()


def test_heisenberg_law_example():
    # (x; y)(x'; y') picks up B_21 x_2 x'_1 = x_2 x'_1
    g, h = np.array([1.0, 2.0, 0.0]), np.array([3.0, 5.0, 0.0])
    assert np.allclose(H.mul(g, h), [4, 7, 6])
    assert np.allclose(H.commutator(g, h), [0, 0, H.form(g[:2], h[:2])])
    assert H.form([1, 0], [0, 1]) == -1


def test_group_axioms_bulk():
    rng = np.random.default_rng(0)
    for group in (H, random_group(rng), NilGroup.abelian(2)):
        s = group.s
        g, h, k = (rng.normal(size=(10_000, s + 1)) * 3 for _ in range(3))
        lhs = group.mul(group.mul(g, h), k)
        rhs = group.mul(g, group.mul(h, k))
        assert np.abs(lhs - rhs).max() <= 1e-12 * 100
        e = group.identity()
        assert np.abs(group.mul(g, group.inv(g)) - e).max() <= 1e-12
        assert np.abs(group.mul(group.inv(g), g) - e).max() <= 1e-12
        c = group.commutator(g, h)
        assert np.abs(c[:, :-1]).max() == 0
        assert np.abs(c[:, -1] - group.form(g[:, :-1], h[:, :-1])).max() <= 1e-9


@given(heis_elem, heis_elem)
def test_vertical_is_central(g, y):
    z = np.array([0.0, 0.0, y[2]])
    assert np.allclose(H.mul(g, z), H.mul(z, g))


@given(heis_elem, st.integers(-6, 6))
def test_power_matches_repeated_product(g, t):
    acc = H.identity()
    step = g if t >= 0 else H.inv(g)
    for _ in range(abs(t)):
        acc = H.mul(acc, step)
    assert np.allclose(H.power(g, t), acc, atol=1e-8)


@given(heis_elem, heis_elem)
def test_conjugate_formula(g, h):
    assert np.allclose(H.conjugate(g, h), H.mul(H.mul(g, h), H.inv(g)), atol=1e-9)


@given(heis_elem)
def test_reduce_lands_in_fundamental_domain(g):
    r, gamma = H.reduce(g)
    assert np.all((r >= 0) & (r < 1))
    assert H.in_lattice(gamma)
    assert np.allclose(H.mul(r, gamma), g, atol=1e-9)


def test_element_wrappers():
    g = NilElement((0.5, 1.5), 2.25)
    h = NilElement((1.0, 0.0), 0.0)
    assert mul(H, g, h).packed().tolist() == H.mul(g.packed(), h.packed()).tolist()
    r, gamma = reduce(H, g)
    assert gamma.x == (0.0, 1.0)
    with pytest.raises(ValueError):
        NilElement((math.inf,), 0)


def test_lambda_membership_exhaustive():
    b0 = np.array([[0, -1], [1, 0]])
    count = 0
    for entries in itertools.product(range(-3, 4), repeat=4):
        m = np.array(entries).reshape(2, 2)
        det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
        assert lambda_membership(m, b0) == (det == 1)
        count += det == 1
    assert count > 0
    with pytest.raises(ValueError):
        lambda_membership(np.eye(3, dtype=int), b0)


# orbits


def test_orbit_matches_closed_form():
    rng = np.random.default_rng(5)
    for _ in range(10):
        seq = random_seq(rng)
        fast = orbit(seq, 50)
        slow = orbit_direct(seq, 50)
        assert fast.shape == (50, 50, 3)
        assert np.all(H.same_coset(fast, slow, 1e-9))
        assert np.all((fast >= 0) & (fast < 1))


def test_orbit_on_rank_three_group():
    rng = np.random.default_rng(6)
    g = random_group(rng)
    seq = random_seq(rng, g)
    assert np.all(g.same_coset(orbit(seq, 30), orbit_direct(seq, 30), 1e-9))


def test_orbit_first_point():
    seq = PolySeq2(H, NilElement((0.1, 0.2), 0.3), NilElement((0.5, 0.0), 0.0), NilElement((0.0, 0.25), 0.0))
    pts = orbit(seq, 4)
    assert np.allclose(pts[0, 0], H.reduce(evaluate_direct(seq, 1, 1))[0])


def test_polyseq_validation_and_json():
    with pytest.raises(ValueError, match="G_2"):
        PolySeq2(H, NilElement((0, 0), 0), NilElement((0, 0), 0), NilElement((0, 0), 0),
                 g21=NilElement((1, 0), 0))
    with pytest.raises(ValueError, match="dimension"):
        PolySeq2(H, NilElement((0,), 0), NilElement((0, 0), 0), NilElement((0, 0), 0))
    seq = random_seq(np.random.default_rng(1))
    back = PolySeq2.from_json(H, seq.to_json())
    assert np.allclose(orbit_direct(back, 5), orbit_direct(seq, 5))


def test_kronecker_rotation_is_equidistributed():
    alpha = (math.sqrt(5) - 1) / 2
    g = NilGroup.abelian(1)
    seq = PolySeq2(g, NilElement((0.0,), 0), NilElement((alpha,), 0), NilElement((0.0,), 0))
    pts = orbit(seq, 1000)
    d = equid_defect(pts, HorizontalExp((1,)))
    assert d == pytest.approx(1.8199044103481273e-05, rel=1e-6)


def test_rational_orbit_is_not_equidistributed():
    g = NilGroup.abelian(1)
    seq = PolySeq2(g, NilElement((0.0,), 0), NilElement((0.5,), 0), NilElement((0.0,), 0))
    pts = orbit(seq, 100)
    assert equid_defect(pts, HorizontalExp((2,))) == pytest.approx(1 / (4 * math.pi))
    assert equid_defect(pts, HorizontalExp((1,))) == pytest.approx(0.0, abs=1e-12)


def test_progressions_and_test_functions():
    assert Progression(2, 3, 3).mask(10).nonzero()[0].tolist() == [1, 4, 7]
    with pytest.raises(ValueError):
        Progression(5, 3, 3).mask(10)
    with pytest.raises(ValueError):
        HorizontalExp((0, 0))(np.zeros((1, 3)))
    nc = VerticalNilchar(1)
    assert nc.lipschitz == pytest.approx(4 * math.pi)
    pts = orbit(random_seq(np.random.default_rng(2)), 40)
    full = equid_defect(pts, nc)
    sub = equid_defect(pts, nc, (Progression(1, 2, 20), None))
    assert 0 <= sub and 0 <= full <= 1


# smoothness and the Leibman check


def test_smoothness_norm_examples():
    p = TorusPoly2({(0, 0): 0.3, (1, 0): 0.01, (0, 1): 0.999, (1, 1): 0.5})
    assert smoothness_norm(p, 10) == pytest.approx(max(0.1, 0.01, 50))
    assert smoothness_norm(p, (10, 100)) == pytest.approx(max(0.1, 0.1, 500))
    assert smoothness_norm(TorusPoly2({(0, 0): 0.7}), 100) == 0
    with pytest.raises(ValueError):
        TorusPoly2({(3, 0): 0.1})


def test_compose_drops_vertical():
    seq = PolySeq2(H, NilElement((0.1, 0.2), 0.9), NilElement((0.3, 0.4), 0.5), NilElement((0.6, 0.7), 0.1))
    p = compose(HorizontalCharacter((2, -1)), seq)
    m, n = np.arange(1, 6), np.arange(2, 7)
    direct = seq.horizontal(m, n) @ np.array([2.0, -1.0])
    assert np.allclose(np.exp(2j * np.pi * p(m, n)), np.exp(2j * np.pi * direct))


def test_leibman_search_finds_rational_direction():
    # horizontal part (sqrt2 m, m/3 + tiny): eta = (0, 3) kills the m-drift
    seq = PolySeq2(H, NilElement((0.0, 0.0), 0.0), NilElement((math.sqrt(2), 1 / 3 + 1e-5), 0.0),
                   NilElement((0.0, 0.0), 0.0))
    found = leibman_search(seq, 500, 5)
    assert found is not None
    eta, val = found
    assert eta.k == (0, 3)
    assert val == pytest.approx(500 * 3e-5, rel=1e-6)


def test_leibman_search_prefers_positive_tie():
    seq = PolySeq2(H, NilElement((0.0, 0.0), 0.0), NilElement((math.sqrt(2), 0.0), 0.0),
                   NilElement((math.sqrt(3), 0.0), 0.0))
    eta, val = leibman_search(seq, 100, 3)
    assert eta.k == (0, 1) and val == 0


def test_leibman_search_generic_returns_none():
    rng = np.random.default_rng(11)
    seq = random_seq(rng, vertical=False)
    assert leibman_search(seq, 500, 5) is None
    with pytest.raises(ValueError):
        leibman_search(seq, 500, 0)


def biased_instance(rng, d):
    k = rng.integers(-2, 3, size=2)
    while not 0 < np.abs(k).sum() <= d:
        k = rng.integers(-2, 3, size=2)
    n = int(math.ceil(8 * d / LEIBMAN_C)) + int(rng.integers(0, 200))

    def tilt(x, delta):
        t = float(k @ x)
        return x + (np.round(t) - t + delta / n) * k / float(k @ k)

    x11 = tilt(rng.random(2), rng.uniform(-d, d) * 0.9)
    x12 = tilt(rng.random(2), rng.uniform(-d, d) * 0.9)
    seq = PolySeq2(H, NilElement(tuple(rng.random(2)), rng.random()), NilElement(tuple(x11), rng.random()),
                   NilElement(tuple(x12), rng.random()), NilElement.vertical(2, rng.random()))
    return seq, HorizontalCharacter(k), n


def test_inverse_leibman_on_constructed_instances():
    rng = np.random.default_rng(3)
    for i in range(20):
        d = 1 + i % 4
        seq, eta, n = biased_instance(rng, d)
        res = inverse_leibman_check(seq, eta, d, n, n)
        assert res.correlation >= 0.5
        assert res.bound == pytest.approx(LEIBMAN_C**2 / (8 * math.pi * d**3))
        assert res.box == (int(LEIBMAN_C * n / d),) * 2


def test_inverse_leibman_preconditions():
    rng = np.random.default_rng(4)
    seq, eta, n = biased_instance(rng, 2)
    with pytest.raises(ValueError, match="8D/c"):
        inverse_leibman_check(seq, eta, 2, 100, 100)
    with pytest.raises(ValueError, match="exceeds D"):
        inverse_leibman_check(seq, HorizontalCharacter((5, 5)), 2, n, n)
    with pytest.raises(ValueError, match="nontrivial"):
        inverse_leibman_check(seq, HorizontalCharacter((0, 0)), 2, n, n)


# subgroups of G x G, vectors laid out (x1, x2, y, z1, z2, w)

E = np.eye(6)
FULL = E
DIAG = np.array([E[0] + E[3], E[1] + E[4], E[2] + E[5]])
ANTI = np.array([E[0] + E[3], E[1] - E[4], E[2] - E[5]])
ABEL = np.array([E[0], E[4]])
LINE = np.array([E[0] + E[3]])


def test_subgroup_trichotomy():
    assert subgroup_type(H, FULL).kind == 1
    d = subgroup_type(H, DIAG)
    assert d.kind == 2 and d.lam == (1.0, 1.0) and d.label == "type2(1,1)"
    a = subgroup_type(H, ANTI)
    assert a.kind == 2 and a.lam == (1.0, -1.0)
    assert subgroup_type(H, ABEL).kind == 3
    assert subgroup_type(H, LINE).label == "type3"
    # G x {e}: commutators fill only the first vertical axis
    first = subgroup_type(H, np.array([E[0], E[1], E[2]]))
    assert first.kind == 2 and first.lam == (1.0, 0.0)


def test_subgroup_rejects_non_closed_span():
    with pytest.raises(ValueError, match="not closed"):
        subgroup_type(H, np.array([E[0], E[1]]))
    with pytest.raises(ValueError, match="dependent"):
        subgroup_type(H, np.array([E[0], E[0]]))
    with pytest.raises(ValueError, match="length"):
        subgroup_type(H, np.eye(3))


GOOD_PAIRS = [
    (FULL, FULL, True),
    (FULL, DIAG, False),
    (FULL, ANTI, True),
    (FULL, ABEL, False),
    (DIAG, DIAG, True),
    (DIAG, LINE, False),
    (ABEL, ABEL, True),
]


@pytest.mark.parametrize("h,hp,expected", GOOD_PAIRS)
def test_good_pairs(h, hp, expected):
    assert good_pair_check(subgroup_type(H, h), subgroup_type(H, hp)) is expected


@pytest.mark.parametrize("h,hp", [(DIAG, FULL), (ABEL, FULL), (LINE, DIAG)])
def test_impossible_pairs_raise(h, hp):
    with pytest.raises(ContainmentError):
        good_pair_check(subgroup_type(H, h), subgroup_type(H, hp))


def test_theta_lambda():
    a, b = theta_lambda((2.0, 3.0), [1, 2], [3, 4], 5.0, 7.0)
    assert a.tolist() == [1, 2, 14] and b.tolist() == [3, 4, 26]
    a, b = theta_lambda((0.0, 1.0), [1, 2], [3, 4], 5.0, 7.0)
    assert a.tolist() == [1, 2, 5] and b.tolist() == [3, 4, 7]


# rational / smooth / periodic splitting


def grid_points(n):
    idx = np.arange(1, n + 1)
    return np.meshgrid(idx, idx, indexing="ij")


def test_factorization_check_accepts_valid_split():
    n, m = 40, 4
    mm, nn = grid_points(n)
    gp = PolySeq2(H, NilElement((0.1, 0.2), 0), NilElement((math.sqrt(2), 0.3), 0), NilElement((0.7, math.pi), 0))
    g_prime = evaluate_direct(gp, mm, nn)
    eps = np.zeros((n, n, 3))
    eps[..., 0] = 0.5 * mm / n
    gamma = np.zeros((n, n, 3))
    gamma[..., 0] = 0.5 * (mm % 2)
    gamma[..., 2] = 0.5 * (mm % 2)
    g = H.mul(H.mul(eps, g_prime), gamma)
    rep = rational_smooth_periodic_check(H, eps, g_prime, gamma, g, m, n)
    assert rep.ok, rep.failures
    assert rep.rational_order == 2
    assert rep.periods == (2, 1)


def test_factorization_check_reports_failures():
    n, m = 20, 3
    mm, nn = grid_points(n)
    eps = np.zeros((n, n, 3))
    eps[..., 1] = 5.0 * (mm % 2)  # jumps by 5 each step
    gamma = np.zeros((n, n, 3))
    gamma[..., 0] = math.sqrt(2) * mm
    gp = np.zeros((n, n, 3))
    g = H.mul(H.mul(eps, gp), gamma) + 1.0
    rep = rational_smooth_periodic_check(H, eps, gp, gamma, g, m, n)
    assert not rep.smooth and not rep.rational and not rep.periodic and not rep.recomposes
    assert len(rep.failures) == 4
    with pytest.raises(ValueError, match="shape"):
        rational_smooth_periodic_check(H, eps[:5], gp, gamma, g, m, n)
