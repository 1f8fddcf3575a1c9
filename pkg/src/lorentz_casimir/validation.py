"""Self-validation suite: numerical results against closed forms and cross-routes.

Each check returns a :class:`CheckResult`; :func:`run_all` runs them in order.
Used by ``casimir validate`` and by the acceptance tests.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import ideal
from .constants import C, HBAR_C
from .forces import (
    CavityConfig,
    atom_force_far,
    atom_force_full,
    atom_force_nonretarded,
    force_split,
    force_total_direct,
    medium_force_density,
    medium_layer_force,
    transparency_frequency,
    zs_atom_force,
)
from .materials import (
    VACUUM,
    AtomPolarizability,
    Constant,
    Drude,
    LorentzSum,
    Material,
    Oscillator,
    dilute_medium,
)
from .optics import (
    POLARIZATIONS,
    IdealConductive,
    IdealPermeable,
    RealSlab,
    Stack,
    mirror_reflection,
    reflection_pform,
    slab_rt,
)
from .quadrature import QuadratureSettings, integrate_semi_infinite

# reference resonance for the dispersive test materials
OMEGA = 1e15
LENGTH = C / OMEGA


@dataclass
class CheckResult:
    number: int
    title: str
    passed: bool
    measured: str
    expected: str
    tolerance: str
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"[{status}] {self.number:2d}. {self.title}: measured {self.measured}; "
                f"expected {self.expected} ({self.tolerance}) [{self.seconds:.1f} s]")


def _rel(a, b):
    return abs(a - b) / abs(b)


def _slope(x, y):
    return float(np.polyfit(np.log(x), np.log(np.abs(y)), 1)[0])


def _semi(mirror, medium, slab, d):
    return CavityConfig(mirror, mirror, medium, slab, math.inf, d)


_KINDS = {"c": IdealConductive(), "p": IdealPermeable()}


def _ideal_numeric(tag: str, medium: Material, d: float, rel_tol: float):
    """force_split for a semi-infinite ideal configuration named by its tag (mirror, slab)."""
    return force_split(_semi(_KINDS[tag[0]], medium, _KINDS[tag[1]], d),
                       QuadratureSettings(rel_tol=rel_tol))


def check_vacuum_casimir(rel_tol=1e-8) -> CheckResult:
    t0 = time.perf_counter()
    res = _ideal_numeric("cc", VACUUM, 1e-6, rel_tol)
    seconds = time.perf_counter() - t0
    target = math.pi**2 / 240
    ok = _rel(res.C_f1, target) <= 1e-3 and res.f2 == 0.0 and seconds < 5.0
    return CheckResult(1, "vacuum Casimir limit", ok,
                       f"C_f1={res.C_f1:.10f}, f2={float(res.f2)!r}, {seconds:.2f} s",
                       f"C_f1=pi^2/240={target:.10f}, f2=0 exactly, < 5 s", "rel 1e-3",
                       seconds)


def check_four_configurations(rel_tol=1e-8) -> CheckResult:
    t0 = time.perf_counter()
    eps0, mu0, d = 2.0, 1.0, 1e-6
    medium = Material(Constant(eps0), Constant(mu0))
    worst = 0.0
    totals = {}
    for tag in ("cc", "pp", "cp", "pc"):
        res = _ideal_numeric(tag, medium, d, rel_tol)
        worst = max(worst, _rel(res.f1, ideal.ideal_f1(d, tag, eps0, mu0)),
                    _rel(res.f2, ideal.ideal_f2(d, tag, eps0, mu0)))
        totals[tag] = res.total
    ratio = totals["pc"] / totals["cc"]
    seconds = time.perf_counter() - t0
    ok = (worst <= 5e-3 and totals["cp"] < 0 and totals["pc"] < 0
          and _rel(ratio, -7 / 8) <= 5e-3 and seconds < 60)
    return CheckResult(2, "four ideal configurations", ok,
                       f"worst rel dev {worst:.2e}, f_cp={totals['cp']:.4e}, "
                       f"f_pc={totals['pc']:.4e}, f_pc/f_cc={ratio:.6f}",
                       "closed forms, f_cp<0, f_pc<0, f_pc/f_cc=-0.875", "rel 5e-3, < 60 s",
                       seconds)


def check_dense_ratio(rel_tol=1e-8) -> CheckResult:
    t0 = time.perf_counter()
    n0_sq = 100.0
    res = _ideal_numeric("cc", Material(Constant(n0_sq)), 1e-6, rel_tol)
    ratio = res.f2 / res.f1
    target = (1 / 3) * (1 - 1 / n0_sq) / (1 + 1 / n0_sq)
    return CheckResult(3, "dense-media f2/f1 ratio", _rel(ratio, target) <= 1e-2,
                       f"{ratio:.6f}", f"{target:.6f}", "rel 1e-2", time.perf_counter() - t0)


def check_pp_relation(rel_tol=1e-8) -> CheckResult:
    t0 = time.perf_counter()
    devs, ratios = [], {}
    for n0_sq in (2.0, 100.0):
        medium = Material(Constant(n0_sq))
        pp = _ideal_numeric("pp", medium, 1e-6, rel_tol).total
        cc = _ideal_numeric("cc", medium, 1e-6, rel_tol).total
        ratios[n0_sq] = pp / cc
        devs.append(_rel(pp / cc, (n0_sq + 2) / (2 * n0_sq + 1)))
    dense = _rel(ratios[100.0], 0.5)
    ok = max(devs) <= 1e-2 and dense <= 2e-2
    return CheckResult(4, "f_pp = (n0^2+2)/(2 n0^2+1) f_cc", ok,
                       f"pp/cc={ratios[2.0]:.6f} (n0^2=2), {ratios[100.0]:.6f} (n0^2=100)",
                       f"{4 / 5:.6f}, {102 / 201:.6f}; dense ~0.5",
                       "rel 1e-2; dense rel 2e-2", time.perf_counter() - t0)


def check_screened_casimir_polder(rel_tol=1e-8) -> CheckResult:
    t0 = time.perf_counter()
    pol = AtomPolarizability(Oscillator(1e-30, OMEGA))
    mirror = IdealConductive()
    omega = transparency_frequency(mirror, VACUUM, pol)
    z = 20 * C / omega
    settings = QuadratureSettings(rel_tol=rel_tol)
    far = atom_force_far(z, mirror, VACUUM, pol, settings).coefficient
    full = atom_force_full(z, mirror, VACUUM, pol, settings).coefficient
    zs_far = zs_atom_force(z, mirror, VACUUM, pol, settings, regime="far").coefficient
    zs_full = zs_atom_force(z, mirror, VACUUM, pol, settings, regime="full").coefficient
    ok = (_rel(far, 1 / (2 * math.pi)) <= 1e-9
          and _rel(full, far) <= 2e-2
          and _rel(zs_far, 3 / (2 * math.pi)) <= 1e-9
          and _rel(far / zs_far, 1 / 3) <= 2e-2
          and _rel(full / zs_full, 1 / 3) <= 2e-2)
    return CheckResult(5, "screened Casimir-Polder", ok,
                       f"far={far:.10f}, full@20c/Omega={full:.6f}, zs_far={zs_far:.10f}, "
                       f"ratio far={far / zs_far:.6f}, full={full / zs_full:.6f}",
                       f"1/2pi={1 / (2 * math.pi):.10f}, 3/2pi={3 / (2 * math.pi):.10f}, ratio 1/3",
                       "closed forms rel 1e-9; full and ratios rel 2e-2", time.perf_counter() - t0)


def check_scaling(rel_tol=1e-8) -> CheckResult:
    t0 = time.perf_counter()
    settings = QuadratureSettings(rel_tol=rel_tol)
    medium = Material(LorentzSum(((1.0, OMEGA, 0.0),)))
    ds = np.geomspace(50 * LENGTH, 500 * LENGTH, 5)
    slab = [force_split(_semi(IdealConductive(), medium, IdealConductive(), d), settings).total
            for d in ds]
    pol = AtomPolarizability(Oscillator(1e-30, OMEGA))
    z_far = np.geomspace(20 * LENGTH, 200 * LENGTH, 5)
    atom_far = atom_force_full(z_far, IdealConductive(), VACUUM, pol, settings).value
    mirror = Stack.half_space(Material(LorentzSum(((3.0, 2 * OMEGA, 0.1 * OMEGA),))))
    z_near = np.geomspace(1e-3 * LENGTH, 1e-2 * LENGTH, 5)
    nr = atom_force_nonretarded(z_near, mirror, VACUUM, pol, settings).value
    zs_near = zs_atom_force(z_near, mirror, VACUUM, pol, settings, regime="near").value
    slopes = {"slab": _slope(ds, slab), "atom far": _slope(z_far, atom_far),
              "nonretarded": _slope(z_near, nr), "zs near": _slope(z_near, zs_near)}
    expected = {"slab": -4, "atom far": -5, "nonretarded": -2, "zs near": -4}
    ok = all(abs(slopes[k] - expected[k]) <= 0.05 for k in slopes)
    return CheckResult(6, "distance scaling exponents", ok,
                       ", ".join(f"{k} {v:.4f}" for k, v in slopes.items()),
                       ", ".join(f"{k} {v}" for k, v in expected.items()), "abs 0.05",
                       time.perf_counter() - t0)


def check_sign_law(rel_tol=1e-8) -> CheckResult:
    t0 = time.perf_counter()
    settings = QuadratureSettings(rel_tol=rel_tol)
    mirror_mat = Material(LorentzSum(((4.0, 2 * OMEGA, 0.05 * OMEGA),)))
    dielectric = Stack.half_space(mirror_mat)
    permeable = Stack.half_space(mirror_mat.swapped())
    z = np.array([0.01, 0.1, 1.0, 10.0]) * LENGTH
    signs = {}
    for name, osc in (("alpha_e", "e"), ("alpha_m", "m")):
        o = Oscillator(1e-30, OMEGA)
        pol = AtomPolarizability(alpha_e=o) if osc == "e" else AtomPolarizability(alpha_m=o)
        medium = dilute_medium(pol, 1e-4 / (4 * math.pi * 1e-30))
        signs[(name, "dielectric")] = atom_force_full(z, dielectric, medium, pol, settings).value
        signs[(name, "permeable")] = atom_force_full(z, permeable, medium, pol, settings).value
    ok = all(np.all(v > 0) for (n, m), v in signs.items() if m == "dielectric") and all(
        np.all(v < 0) for (n, m), v in signs.items() if m == "permeable")
    measured = ", ".join(
        f"{n}/{m}: {'+' if np.all(v > 0) else '-' if np.all(v < 0) else 'mixed'}"
        for (n, m), v in signs.items())
    return CheckResult(7, "sign law", ok, measured,
                       "dielectric +, permeable - for both atom types", "sign at 4 distances",
                       time.perf_counter() - t0)


def random_lorentz(rng, n_max=2) -> LorentzSum:
    return LorentzSum(tuple(
        (rng.uniform(0.1, 4.0), OMEGA * rng.uniform(0.5, 5.0), OMEGA * rng.uniform(0.0, 0.5))
        for _ in range(rng.integers(1, n_max + 1))))


def random_material(rng, magnetic_probability=0.3) -> Material:
    mu = random_lorentz(rng) if rng.random() < magnetic_probability else Constant(1.0)
    return Material(random_lorentz(rng), mu)


def random_stack(rng, max_layers=3, drude_probability=0.4) -> Stack:
    n = int(rng.integers(1, max_layers + 1))
    layers = [(random_material(rng), rng.uniform(5e-9, 2e-7)) for _ in range(n - 1)]
    if rng.random() < drude_probability:
        last = Material(Drude(OMEGA * rng.uniform(5, 15), OMEGA * rng.uniform(0.01, 0.1)))
    else:
        last = random_material(rng)
    layers.append((last, math.inf))
    return Stack(tuple(layers))


def random_cavity(rng, index_matched=False) -> CavityConfig:
    medium = random_material(rng)
    slab_mat = medium if index_matched else random_material(rng)
    return CavityConfig(random_stack(rng), random_stack(rng), medium,
                        RealSlab(slab_mat, rng.uniform(1e-8, 5e-7)),
                        rng.uniform(5e-8, 1e-6), rng.uniform(5e-8, 1e-6))


def check_split_consistency(rel_tol=1e-8, n_configs=20, seed=2005) -> CheckResult:
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    settings = QuadratureSettings(rel_tol=rel_tol)
    worst = 0.0
    failures = 0
    for _ in range(n_configs):
        cfg = random_cavity(rng)
        split = force_split(cfg, settings)
        direct = force_total_direct(cfg, settings)
        bound = split.total_error + direct.total_error
        diff = abs(direct.total - split.total)
        worst = max(worst, diff / bound if bound else (0.0 if diff == 0 else math.inf))
        failures += diff > bound
    return CheckResult(8, "split consistency", failures == 0,
                       f"{failures}/{n_configs} outside bound, worst |diff|/bound={worst:.3g}",
                       "|direct - (f1+f2)| <= summed error estimates", "per config",
                       time.perf_counter() - t0)


def check_medium_density(rel_tol=1e-8, n_configs=5, seed=13) -> CheckResult:
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    settings = QuadratureSettings(rel_tol=rel_tol)
    failures, worst = 0, 0.0
    for _ in range(n_configs):
        cfg = random_cavity(rng, index_matched=True)
        analytic = medium_layer_force(cfg, settings)
        density = medium_layer_force(cfg, settings, method="density")
        f2 = force_split(cfg, settings)
        for other, other_err in ((density.value, density.error_estimate), (f2.f2, f2.f2_error)):
            bound = analytic.error_estimate + other_err
            diff = abs(analytic.value - other)
            worst = max(worst, diff / bound if bound else 0.0)
            failures += diff > bound
    pol = AtomPolarizability(Oscillator(0.6e-30, OMEGA), Oscillator(0.4e-30, 0.7 * OMEGA))
    n_density = 1e-3 / (4 * math.pi * pol.static)
    medium = dilute_medium(pol, n_density)
    mirror = Stack.half_space(Material(LorentzSum(((3.0, 2 * OMEGA, 0.1 * OMEGA),))))
    z = np.array([0.1, 1.0, 10.0]) * LENGTH
    dens = medium_force_density(z, mirror, medium, settings).value
    atom = atom_force_full(z, mirror, medium, pol, settings).value
    dilute_dev = float(np.max(np.abs(dens / (n_density * atom) - 1)))
    ok = failures == 0 and dilute_dev <= 1e-2
    return CheckResult(9, "medium force density", ok,
                       f"{failures} route mismatches (worst |diff|/bound={worst:.3g}), "
                       f"dilute rel dev {dilute_dev:.2e}",
                       "layer force = z-integrated density = f2; f(z) = N f_at(z)",
                       "combined error; dilute rel 1e-2", time.perf_counter() - t0)


def check_quadrature(rel_tol=1e-8) -> CheckResult:
    t0 = time.perf_counter()
    cases = [
        (lambda x: x**3 * np.exp(-x), 6.0),
        (lambda x: np.exp(-x * x), math.sqrt(math.pi) / 2),
        (lambda x: x**3 / np.expm1(x), math.pi**4 / 15),
    ]
    rel_errs, bound_ok = [], True
    for f, exact in cases:
        res = integrate_semi_infinite(f, QuadratureSettings(rel_tol=rel_tol))
        err = abs(res.value - exact)
        rel_errs.append(err / exact)
        bound_ok &= err <= 10 * res.error_estimate
    ok = max(rel_errs) <= 10 * rel_tol and bound_ok
    return CheckResult(10, "quadrature calibration", ok,
                       "rel errors " + ", ".join(f"{e:.1e}" for e in rel_errs)
                       + f"; estimates bound errors: {bound_ok}",
                       "Gamma(4)=6, sqrt(pi)/2, pi^4/15", f"rel {10 * rel_tol:.0e}, bound x10",
                       time.perf_counter() - t0)


def check_optics(rel_tol=1e-8, draws=10_000, seed=7) -> CheckResult:
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    max_r, max_slab, worst_identity = 0.0, 0.0, 0.0
    rt_ok = True
    for _ in range(draws):
        stack = random_stack(rng)
        medium = random_material(rng)
        xi = OMEGA * 10 ** rng.uniform(-3, 1.5)
        k = 10 ** rng.uniform(3, 9, size=4)
        p = 1 + 10 ** rng.uniform(-6, 2, size=4)
        n = math.sqrt(float(medium.n_sq(xi)))
        for q in POLARIZATIONS:
            max_r = max(max_r, float(np.max(np.abs(mirror_reflection(q, stack, medium, xi, k)))))
            r, t = slab_rt(q, RealSlab(stack.layers[0][0], rng.uniform(1e-9, 1e-6)), medium, xi, k)
            max_slab = max(max_slab, float(np.max(np.abs(r))), float(np.max(np.abs(t))))
            rt_ok &= bool(np.all(np.abs(r * r - t * t) <= 1.0))
            rp = reflection_pform(q, stack, medium, xi, p)
            rk = mirror_reflection(q, stack, medium, xi, n * xi / C * np.sqrt(p * p - 1))
            scale = np.maximum(np.abs(rk), 1e-3)
            worst_identity = max(worst_identity, float(np.max(np.abs(rp - rk) / scale)))
    ok = max_r <= 1.0 and max_slab <= 1.0 and rt_ok and worst_identity <= 1e-12
    return CheckResult(11, "optics invariants", ok,
                       f"max|r_mirror|={max_r:.15f}, max|r|,|t| slab={max_slab:.15f}, "
                       f"p/k identity worst rel {worst_identity:.1e}",
                       "|r| <= 1, |r^2-t^2| <= 1, identical p- and k-forms",
                       f"{draws} draws; identity rel 1e-12", time.perf_counter() - t0)


CHECKS: list[Callable[..., CheckResult]] = [
    check_vacuum_casimir,
    check_four_configurations,
    check_dense_ratio,
    check_pp_relation,
    check_screened_casimir_polder,
    check_scaling,
    check_sign_law,
    check_split_consistency,
    check_medium_density,
    check_quadrature,
    check_optics,
]


def run_all(rel_tol=1e-8, report: Callable[[str], None] = print) -> list[CheckResult]:
    results = []
    for check in CHECKS:
        res = check(rel_tol=rel_tol)
        report(res.line())
        results.append(res)
    return results
