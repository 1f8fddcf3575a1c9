import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lorentz_casimir.constants import C
from lorentz_casimir.materials import VACUUM, Constant, Drude, LorentzSum, Material
from lorentz_casimir.optics import (
    IdealConductive,
    IdealPermeable,
    Polarization,
    RealSlab,
    Stack,
    kappa,
    mirror_reflection,
    reflection_nonretarded,
    reflection_pform,
    rho_interface,
    slab_rt,
)

P, S = Polarization.P, Polarization.S
W0 = 1e15


def test_delta():
    assert P.delta - S.delta == 2


def test_kappa_examples():
    assert kappa(1.0, 0.0, 5.0) == 5.0
    assert kappa(4.0, 3e14, 0.0) == pytest.approx(2 * 3e14 / C)
    assert kappa(2.0, 3 * C, 4.0) == pytest.approx(math.sqrt(34))
    with pytest.raises(ValueError):
        kappa(1.0, 0.0, 0.0)


def test_rho_examples():
    assert rho_interface(P, (2.0, 1.5, 3.0), (2.0, 1.5, 3.0)) == 0.0
    assert rho_interface(S, (2.0, 1.5, 3.0), (2.0, 1.5, 3.0)) == 0.0
    assert rho_interface(P, (1.0, 1.0, 1.0), (1e15, 1.0, 1.0)) == pytest.approx(1.0)
    assert rho_interface(S, (1.0, 1.0, 1.0), (1.0, 1.0, 1e15)) == pytest.approx(-1.0)
    assert rho_interface(P, (1.0, 1.0, 1.0), (2.0, 1.0, 1.0)) == pytest.approx(1 / 3)


GLASS = Material(LorentzSum(((2.0, 2 * W0, 0.1 * W0),)))


def test_slab_limits():
    xi, k = 3e14, 2e6
    r, t = slab_rt(P, RealSlab(GLASS, 1e-15), VACUUM, xi, k)
    assert r == pytest.approx(0.0, abs=1e-8) and t == pytest.approx(1.0, abs=1e-8)
    r, t = slab_rt(P, RealSlab(GLASS, 1.0), VACUUM, xi, k)
    ka, ka_s = kappa(1.0, xi, k), kappa(GLASS.n_sq(xi), xi, k)
    rho = rho_interface(P, (1.0, 1.0, ka), (GLASS.eps(xi), 1.0, ka_s))
    assert r == pytest.approx(rho) and t == 0.0


def test_index_matched_slab():
    xi, k, d = 3e14, 2e6, 1e-7
    r, t = slab_rt(S, RealSlab(GLASS, d), GLASS, xi, k)
    assert r == 0.0
    assert t == pytest.approx(math.exp(-kappa(GLASS.n_sq(xi), xi, k) * d), rel=1e-14)


def test_ideal_slab_and_mirror_constants():
    assert slab_rt(P, IdealConductive(), VACUUM, 1.0, 1.0) == (1.0, 0.0)
    assert slab_rt(S, IdealPermeable(), VACUUM, 1.0, 1.0) == (1.0, 0.0)
    assert mirror_reflection(S, IdealConductive(), VACUUM, 1.0, 1.0) == -1.0
    assert mirror_reflection(P, IdealPermeable(), VACUUM, 1.0, 1.0) == -1.0


def test_stack_examples():
    assert mirror_reflection(P, Stack.half_space(GLASS), GLASS, 3e14, 1e6) == 0.0
    half = Stack.half_space(Material(Constant(2.0)))
    assert mirror_reflection(P, half, VACUUM, 0.0, 1.0) == pytest.approx(1 / 3)


def test_stack_validation():
    with pytest.raises(ValueError):
        Stack(())
    with pytest.raises(ValueError):
        Stack(((GLASS, 1e-7),))
    with pytest.raises(ValueError):
        Stack(((GLASS, math.inf), (GLASS, math.inf)))


def test_nonretarded_examples():
    m = Stack.half_space(Material(Constant(3.0)))
    k = np.array([1.0, 1e6, 1e9])
    assert np.allclose(reflection_nonretarded(P, m, VACUUM, 1e14, k), 0.5)
    assert np.all(reflection_nonretarded(S, m, VACUUM, 1e14, k) == 0.0)
    assert np.all(reflection_nonretarded(P, Stack.half_space(GLASS), GLASS, 1e14, k) == 0.0)


def test_pform_examples():
    half = Stack.half_space(Material(Constant(2.0)))
    assert reflection_pform(P, half, Material(Constant(2.0)), 1e14, 1.0) == 0.0
    assert reflection_pform(P, IdealConductive(), VACUUM, 1e14, 7.0) == 1.0
    assert reflection_pform(S, IdealConductive(), VACUUM, 1e14, 7.0) == -1.0
    s_m = math.sqrt(2)
    assert reflection_pform(P, half, VACUUM, 1e14, 1.0) == pytest.approx((2 - s_m) / (2 + s_m))
    # p = 1 with n_m = n gives (eps_m - eps)/(eps_m + eps)
    matched = Material(Constant(4.0), Constant(1.0))
    cav = Material(Constant(2.0), Constant(2.0))
    assert reflection_pform(P, Stack.half_space(matched), cav, 1e14, 1.0) == pytest.approx(2 / 6)


def test_pform_static_telescopes_thin_layers():
    film = Material(LorentzSum(((5.0, W0, 0.0),)))
    base = Material(Constant(3.0))
    stack = Stack(((film, 1e-8), (base, math.inf)))
    p = np.linspace(1, 20, 7)
    for q in (P, S):
        got = reflection_pform(q, stack, VACUUM, 0.0, p, static=True)
        want = reflection_pform(q, Stack.half_space(base), VACUUM, 0.0, p, static=True)
        assert np.allclose(got, want, rtol=1e-13)


@st.composite
def material(draw, magnetic=True):
    osc = st.tuples(st.floats(0, 10), st.floats(0.1, 10).map(lambda x: x * W0),
                    st.floats(0, 1).map(lambda x: x * W0))
    eps = LorentzSum(tuple(draw(st.lists(osc, min_size=1, max_size=2))))
    if draw(st.booleans()):
        eps = Drude(draw(st.floats(0.5, 20)) * W0, draw(st.floats(0, 0.5)) * W0)
    mu = LorentzSum(tuple(draw(st.lists(osc, max_size=1)))) if magnetic else Constant(1.0)
    return Material(eps, mu)


@st.composite
def stack(draw):
    layers = draw(st.lists(st.tuples(material(), st.floats(5e-9, 1e-6)), max_size=3))
    return Stack(tuple(layers) + ((draw(material()), math.inf),))


# below ~1e12 rad/s Drude contrasts reach 1e6+ and the recursion loses digits
xis = st.floats(1e12, 1e17)
ks = st.lists(st.floats(0, 1e10), min_size=1, max_size=8).map(np.array)


@given(stack(), material(), xis, ks)
@settings(max_examples=100, deadline=None)
def test_passive_stack_reflection_bounded(mirror, medium, xi, k):
    for q in (P, S):
        assert np.all(np.abs(mirror_reflection(q, mirror, medium, xi, k)) <= 1.0)


@given(material(), material(), st.floats(1e-10, 1e-5), xis, ks)
@settings(max_examples=100, deadline=None)
def test_slab_coefficients_bounded(slab, medium, d, xi, k):
    for q in (P, S):
        r, t = slab_rt(q, RealSlab(slab, d), medium, xi, k)
        assert np.all(np.abs(r) <= 1) and np.all((t >= 0) & (t <= 1))
        assert np.all(np.abs(r * r - t * t) <= 1)


@given(material(), material(), material(), st.floats(1e-9, 1e-6), xis, ks)
@settings(max_examples=100, deadline=None)
def test_two_layer_stack_matches_slab_composition(film, base, medium, d, xi, k):
    # slab_rt's r composed with the half-space behind it by the same recursion
    for q in (P, S):
        got = mirror_reflection(q, Stack(((film, d), (base, math.inf))), medium, xi, k)
        r_back = mirror_reflection(q, Stack.half_space(base), film, xi, k)
        rho_film = -rho_interface(q, (film.eps(xi), film.mu(xi), kappa(film.n_sq(xi), xi, k)),
                                  (medium.eps(xi), medium.mu(xi), kappa(medium.n_sq(xi), xi, k)))
        e = np.exp(-2 * kappa(film.n_sq(xi), xi, k) * d)
        # front reflection plus the multiply-reflected wave through the film
        want = rho_film + (1 - rho_film**2) * r_back * e / (1 + rho_film * r_back * e)
        assert np.allclose(got, want, rtol=1e-12, atol=1e-12)
        # with an index-matched back the stack is the slab itself
        r, _ = slab_rt(q, RealSlab(film, d), medium, xi, k)
        assert np.allclose(mirror_reflection(q, Stack(((film, d), (medium, math.inf))), medium, xi, k),
                           r, rtol=1e-12, atol=1e-12)


@given(stack(), material(), xis, st.lists(st.floats(1, 1e3), min_size=1, max_size=8).map(np.array))
@settings(max_examples=100, deadline=None)
def test_pform_equals_kform(mirror, medium, xi, p):
    n = math.sqrt(float(medium.n_sq(xi)))
    k = n * xi / C * np.sqrt(p * p - 1)
    for q in (P, S):
        assert np.allclose(reflection_pform(q, mirror, medium, xi, p),
                           mirror_reflection(q, mirror, medium, xi, k), rtol=1e-12, atol=1e-12)
