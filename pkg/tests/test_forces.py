import math

import numpy as np
import pytest
from scipy import integrate

from lorentz_casimir.constants import C, HBAR, HBAR_C
from lorentz_casimir.forces import (
    CavityConfig,
    ConfigurationError,
    DegenerateDenominatorError,
    atom_force_far,
    atom_force_full,
    atom_force_nonretarded,
    cavity_state,
    denominator_N,
    force_split,
    force_total_direct,
    g_difference,
    medium_force_density,
    medium_layer_force,
    transparency_frequency,
    zs_atom_force,
)
from lorentz_casimir.ideal import ideal_f1, ideal_f2
from lorentz_casimir.materials import (
    VACUUM,
    AtomPolarizability,
    Constant,
    Drude,
    LorentzSum,
    Material,
    Oscillator,
    StaticLimitError,
    eval_alpha,
)
from lorentz_casimir.optics import (
    IdealConductive,
    IdealPermeable,
    Polarization,
    RealSlab,
    Stack,
)
from lorentz_casimir.quadrature import QuadratureSettings

W0 = 1e15
L0 = C / W0
P, S = Polarization.P, Polarization.S
GLASS = Material(LorentzSum(((3.0, 2 * W0, 0.1 * W0),)))
LIQUID = Material(LorentzSum(((0.8, 1.5 * W0, 0.0),)), LorentzSum(((0.2, 0.8 * W0, 0.0),)))
GOLD = Material(Drude(9 * W0, 0.05 * W0))
ATOM = AtomPolarizability(Oscillator(1e-30, W0))


def semi(mirror, medium, slab, d=1e-6):
    return CavityConfig(mirror, mirror, medium, slab, math.inf, d)


# --- denominator and integrand -------------------------------------------


def test_denominator_examples():
    kap, d1, d2 = 2e6, 3e-7, 5e-7
    t = 0.37
    assert denominator_N(0.0, t, 0.6, -0.4, kap, d1, d2) == pytest.approx(
        1 - t * t * 0.6 * -0.4 * math.exp(-2 * kap * (d1 + d2)))
    assert denominator_N(0.0, 1.0, 1.0, 1.0, kap, d1, d2) == pytest.approx(
        1 - math.exp(-2 * kap * (d1 + d2)))
    assert denominator_N(0.3, 0.5, 0.0, 0.0, kap, d1, d2) == 1.0


def test_ideal_slab_denominator_factorizes():
    kap = np.geomspace(1e4, 1e8, 9)
    d1, d2 = 3e-7, 5e-7
    got = denominator_N(1.0, 0.0, 1.0, 1.0, kap, d1, d2)
    want = (1 - np.exp(-2 * kap * d1)) * (1 - np.exp(-2 * kap * d2))
    assert np.allclose(got, want, rtol=1e-13)


def test_degenerate_denominator():
    with pytest.raises(DegenerateDenominatorError):
        denominator_N(1.0, 0.0, 1.0, 0.0, 1e-10, 1e-7, math.inf)


def test_g_difference_symmetric_cavity_is_zero():
    mirror = Stack.half_space(GOLD)
    cfg = CavityConfig(mirror, mirror, LIQUID, RealSlab(GLASS, 1e-7), 4e-7, 4e-7)
    st = cavity_state(cfg, 3e14, np.geomspace(1e5, 1e8, 7))
    for q in (P, S):
        assert np.all(g_difference(q, st, cfg) == 0.0)


def test_g_difference_index_matched_slab():
    ds, d1, d2 = 1e-7, 3e-7, 6e-7
    cfg = CavityConfig(Stack.half_space(GOLD), Stack.half_space(GLASS), LIQUID,
                       RealSlab(LIQUID, ds), d1, d2)
    xi, k = 4e14, np.geomspace(1e5, 1e8, 7)
    st = cavity_state(cfg, xi, k)
    n_sq = float(LIQUID.n_sq(xi))
    kap = np.sqrt(n_sq * (xi / C) ** 2 + k * k)
    for q in (P, S):
        r1, r2 = st.r1[q], st.r2[q]
        e1, e2 = np.exp(-2 * kap * d1), np.exp(-2 * kap * d2)
        want = (-(xi / C) ** 2 * (n_sq - 1) * (1 - np.exp(-2 * kap * ds)) * q.delta
                * (r2 * e2 - r1 * e1) / (1 - r1 * r2 * np.exp(-2 * kap * (d1 + d2 + ds))))
        assert np.allclose(g_difference(q, st, cfg), want, rtol=1e-12)


# --- slab force -----------------------------------------------------------


def test_vacuum_casimir():
    res = force_split(semi(IdealConductive(), VACUUM, IdealConductive()))
    assert res.converged
    assert res.C_f1 == pytest.approx(math.pi**2 / 240, rel=1e-8)
    assert res.f2 == 0.0 and res.total > 0


@pytest.mark.parametrize("tag", ["cc", "pp", "cp", "pc"])
def test_ideal_oracle_all_tags(tag):
    kinds = {"c": IdealConductive(), "p": IdealPermeable()}
    eps0, mu0, d = 3.0, 1.5, 2e-7
    medium = Material(Constant(eps0), Constant(mu0))
    res = force_split(semi(kinds[tag[0]], medium, kinds[tag[1]], d))
    assert res.f1 == pytest.approx(ideal_f1(d, tag, eps0, mu0), rel=1e-7)
    assert res.f2 == pytest.approx(ideal_f2(d, tag, eps0, mu0), rel=1e-7)


def test_ratio_for_moderate_medium():
    res = force_split(semi(IdealConductive(), Material(Constant(2.0)), IdealConductive(), 50 * L0))
    assert res.f2 / res.f1 == pytest.approx(1 / 9, rel=1e-7)


def test_real_mirror_against_scipy():
    # vacuum gap, perfectly conducting slab, glass half-space: f1 only, in
    # dimensionless variables x = xi d / c, y = k d.
    d = 2e-7
    cfg = semi(Stack.half_space(GLASS), VACUUM, IdealConductive(), d)
    res = force_split(cfg, QuadratureSettings(rel_tol=1e-9))

    def integrand(y, x):
        xi = x * C / d
        eps_m = float(GLASS.eps(xi))
        kap = math.hypot(x, y)
        kap_m = math.sqrt(eps_m * x * x + y * y)
        rp = (eps_m * kap - kap_m) / (eps_m * kap + kap_m)
        rs = (kap - kap_m) / (kap + kap_m)
        e = math.exp(-2 * kap)
        return y * kap * (rp * e / (1 - rp * e) - rs * e / (1 + rs * e))

    val, _ = integrate.dblquad(integrand, 0, 60, 0, 60, epsabs=1e-12, epsrel=1e-10)
    oracle = HBAR_C / (2 * math.pi**2 * d**4) * val
    assert res.f1 == pytest.approx(oracle, rel=1e-7)
    assert res.parts[("f1", "s")] > 0 and res.parts[("f1", "p")] > 0


def test_symmetric_cavity_zero():
    mirror = Stack(((GLASS, 2e-8), (GOLD, math.inf)))
    cfg = CavityConfig(mirror, mirror, LIQUID, RealSlab(GLASS, 1e-7), 3e-7, 3e-7)
    assert force_split(cfg).total == 0.0
    assert force_total_direct(cfg).total == 0.0


def test_index_matched_slab_has_no_f1():
    cfg = CavityConfig(Stack.half_space(GOLD), Stack.half_space(GLASS), LIQUID,
                       RealSlab(LIQUID, 1e-7), 2e-7, 3e-7)
    res = force_split(cfg)
    assert res.f1 == 0.0 and res.f2 != 0.0


def test_mirror_swap_antisymmetry():
    cfg = CavityConfig(Stack.half_space(GOLD), Stack(((GLASS, 3e-8), (GOLD, math.inf))),
                       LIQUID, RealSlab(GLASS, 8e-8), 2e-7, 4e-7)
    a, b = force_split(cfg), force_split(cfg.swapped())
    assert a.total == pytest.approx(-b.total, rel=1e-8)


def test_direct_matches_split():
    cfg = CavityConfig(Stack.half_space(GOLD), Stack(((GLASS, 3e-8), (GOLD, math.inf))),
                       LIQUID, RealSlab(GLASS, 8e-8), 2e-7, 4e-7)
    a, b = force_split(cfg), force_total_direct(cfg)
    assert abs(a.total - b.total) <= a.total_error + b.total_error
    assert a.f1 + a.f2 == a.total


def test_drude_materials_usable():
    cfg = CavityConfig(Stack.half_space(GOLD), Stack.half_space(GOLD), Material(Drude(W0, 1e13)),
                       RealSlab(GOLD, 5e-8), 2e-7, 3e-7)
    res = force_split(cfg)
    assert res.converged and np.isfinite(res.total)


def test_semi_infinite_ideal_force_decreases():
    ds = np.geomspace(1e-8, 1e-5, 7)
    medium = Material(LorentzSum(((1.0, W0, 0.0),)))
    f = [force_split(semi(IdealConductive(), medium, IdealConductive(), d)).total for d in ds]
    assert all(x > 0 for x in f) and np.all(np.diff(f) < 0)


def test_config_validation():
    with pytest.raises(ConfigurationError):
        CavityConfig(IdealConductive(), IdealConductive(), VACUUM, IdealConductive(), -1.0, 1.0)
    with pytest.raises(ConfigurationError):
        CavityConfig(IdealConductive(), IdealConductive(), VACUUM, IdealConductive(), math.inf, math.inf)


# --- medium -----------------------------------------------------------------


def test_density_vacuum_and_matched_mirror_zero():
    assert medium_force_density(1e-7, IdealConductive(), VACUUM).value == 0.0
    assert medium_force_density(1e-7, Stack.half_space(LIQUID), LIQUID).value == 0.0


def test_density_sign_follows_mirror_type():
    z = np.array([0.1, 1.0]) * L0
    assert np.all(medium_force_density(z, IdealConductive(), LIQUID).value > 0)
    assert np.all(medium_force_density(z, IdealPermeable(), LIQUID).value < 0)
    assert np.all(medium_force_density(z, Stack.half_space(GLASS), LIQUID).value > 0)


def test_density_vector_matches_scalar():
    z = np.array([0.3, 2.0]) * L0
    vec = medium_force_density(z, Stack.half_space(GLASS), LIQUID).value
    for zi, v in zip(z, vec):
        assert medium_force_density(zi, Stack.half_space(GLASS), LIQUID).value == pytest.approx(v, rel=1e-7)


def test_layer_force_routes_agree():
    cfg = CavityConfig(Stack.half_space(GOLD), Stack(((GLASS, 3e-8), (GOLD, math.inf))),
                       LIQUID, RealSlab(LIQUID, 1e-7), 2e-7, 4e-7)
    a = medium_layer_force(cfg)
    b = medium_layer_force(cfg, method="density")
    c = force_split(cfg)
    assert abs(a.value - b.value) <= a.error_estimate + b.error_estimate
    assert abs(a.value - c.f2) <= a.error_estimate + c.f2_error


def test_layer_force_symmetric_and_semi_infinite():
    mirror = Stack.half_space(GLASS)
    sym = CavityConfig(mirror, mirror, LIQUID, RealSlab(LIQUID, 1e-7), 3e-7, 3e-7)
    assert medium_layer_force(sym).value == 0.0
    for mirror, sign in ((IdealConductive(), 1), (IdealPermeable(), -1), (Stack.half_space(GOLD), 1)):
        res = medium_layer_force(semi(mirror, LIQUID, RealSlab(LIQUID, 1e-7), 2e-7))
        assert np.sign(res.value) == sign


def test_layer_force_requires_index_matching():
    with pytest.raises(ConfigurationError):
        medium_layer_force(semi(IdealConductive(), LIQUID, RealSlab(GLASS, 1e-7)))


# --- atoms --------------------------------------------------------------------


def test_atom_zero_for_matched_mirror():
    assert atom_force_full(L0, Stack.half_space(LIQUID), LIQUID, ATOM).value == 0.0
    assert zs_atom_force(L0, Stack.half_space(LIQUID), LIQUID, ATOM, regime="near").value == 0.0
    matched = Stack.half_space(VACUUM)
    assert atom_force_nonretarded(L0, matched, VACUUM, ATOM).value == 0.0


def test_far_closed_forms():
    z = 1e-6
    far = atom_force_far(z, IdealConductive(), VACUUM, ATOM)
    assert far.value == pytest.approx(HBAR_C * 1e-30 / (2 * math.pi * z**5), rel=1e-12)
    perm = atom_force_far(z, IdealPermeable(), VACUUM, ATOM)
    assert perm.value == pytest.approx(-far.value, rel=1e-12)
    zs = zs_atom_force(z, IdealConductive(), VACUUM, ATOM, regime="far")
    assert zs.coefficient == pytest.approx(3 / (2 * math.pi), rel=1e-12)


def test_far_needs_static_medium():
    with pytest.raises(StaticLimitError):
        atom_force_far(1e-6, IdealConductive(), Material(Drude(W0)), ATOM)


def test_full_approaches_far():
    omega = transparency_frequency(IdealConductive(), VACUUM, ATOM)
    assert omega == W0
    z = 50 * C / omega
    full = atom_force_full(z, IdealConductive(), VACUUM, ATOM)
    far = atom_force_far(z, IdealConductive(), VACUUM, ATOM)
    assert full.value == pytest.approx(far.value, rel=3e-3)


def test_full_approaches_nonretarded():
    z = 1e-4 * L0
    mirror = Stack.half_space(GLASS)
    full = atom_force_full(z, mirror, VACUUM, ATOM).value
    nr = atom_force_nonretarded(z, mirror, VACUUM, ATOM).value
    assert full == pytest.approx(nr, rel=2e-3)
    zs = zs_atom_force(z, mirror, VACUUM, ATOM).value
    assert zs == pytest.approx(zs_atom_force(z, mirror, VACUUM, ATOM, regime="near").value, rel=1e-5)


def test_nonretarded_single_medium_against_scipy():
    z = 3e-9
    mirror_mat = Material(LorentzSum(((3.0, 2 * W0, 0.1 * W0),)), LorentzSum(((0.5, W0, 0.0),)))
    medium = Material(LorentzSum(((0.2, 3 * W0, 0.0),)))
    got = atom_force_nonretarded(z, Stack.half_space(mirror_mat), medium, ATOM).value

    def f(xi):
        e, m = float(medium.eps(xi)), float(medium.mu(xi))
        em, mm = float(mirror_mat.eps(xi)), float(mirror_mat.mu(xi))
        return xi**2 * m * float(eval_alpha(ATOM, xi)) * ((em - e) / (em + e) - (mm - m) / (mm + m))

    val, _ = integrate.quad(f, 0, np.inf, epsrel=1e-11, limit=200)
    assert got == pytest.approx(HBAR / (4 * math.pi * C**2 * z**2) * val, rel=1e-7)


def test_nonretarded_rejects_ideal_mirror():
    with pytest.raises(ValueError):
        atom_force_nonretarded(1e-9, IdealConductive(), VACUUM, ATOM)


def test_sign_independent_of_polarizability_type():
    mirror = Stack.half_space(GLASS)
    z = np.array([0.05, 0.5, 5.0]) * L0
    electric = AtomPolarizability(alpha_e=Oscillator(1e-30, W0))
    magnetic = electric.swapped()
    for pol in (electric, magnetic):
        assert np.all(atom_force_full(z, mirror, VACUUM, pol).value > 0)
        assert np.all(atom_force_full(z, Stack.half_space(GLASS.swapped()), VACUUM, pol).value < 0)


def test_coulomb_and_vdw_scaling():
    mirror = Stack.half_space(GLASS)
    z = np.array([1e-9, 2e-9, 4e-9])
    nr = atom_force_nonretarded(z, mirror, VACUUM, ATOM).value
    near = zs_atom_force(z, mirror, VACUUM, ATOM, regime="near").value
    assert np.allclose(nr[:-1] / nr[1:], 4.0, rtol=1e-9)
    assert np.allclose(near[:-1] / near[1:], 16.0, rtol=1e-9)
