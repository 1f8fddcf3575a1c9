"""Lorentz-force Casimir forces in a planar magnetodielectric cavity.

Geometry: mirror 1 | gap d1 | slab | gap d2 | mirror 2, all gaps filled
with the cavity medium. Forces are per unit area (Pa) and positive when
directed toward mirror 2. A gap of ``math.inf`` removes that mirror exactly
(semi-infinite cavity).

The force on the slab splits into a medium-screened Casimir part ``f1``
and a medium-assisted part ``f2``; the latter vanishes in vacuum and also
gives the force on the cavity medium itself and, for dilute media, on its
atoms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import optics
from .constants import C, HBAR, HBAR_C
from .materials import AtomPolarizability, Material, StaticLimitError, eval_alpha, static_values
from .optics import (
    IDEAL,
    POLARIZATIONS,
    MirrorSpec,
    Polarization,
    RealSlab,
    SlabSpec,
    Stack,
)
from .quadrature import (
    KRONROD_WEIGHTS,
    GAUSS_WEIGHTS,
    NODES,
    IntegralResult,
    QuadratureSettings,
    integrate_double,
    integrate_semi_infinite,
    integrate_tail_interval,
)

DENOMINATOR_FLOOR = 1e-12


class DegenerateDenominatorError(ArithmeticError):
    """Multiple-reflection denominator vanished (cavity resonance)."""


class ConfigurationError(ValueError):
    pass


@dataclass(frozen=True)
class CavityConfig:
    mirror1: MirrorSpec
    mirror2: MirrorSpec
    cavity_medium: Material
    slab: SlabSpec
    d1: float
    d2: float

    def __post_init__(self):
        if not (self.d1 > 0 and self.d2 > 0):
            raise ConfigurationError("gap distances d1, d2 must be > 0")
        if math.isinf(self.d1) and math.isinf(self.d2):
            raise ConfigurationError("at most one gap may be infinite")

    @property
    def slab_thickness(self) -> float:
        """Thickness entering the cavity length; zero for ideal slabs."""
        return self.slab.thickness if isinstance(self.slab, RealSlab) else 0.0

    @property
    def length(self) -> float:
        return self.d1 + self.d2 + self.slab_thickness

    @property
    def semi_infinite(self) -> bool:
        return math.isinf(self.d1) or math.isinf(self.d2)

    @property
    def d_ref(self) -> float:
        """Normalization length: the finite gap, or the smaller one."""
        return min(self.d1, self.d2)

    def swapped(self) -> "CavityConfig":
        """Mirror image: mirror 1 and mirror 2 exchanged with their gaps."""
        return CavityConfig(self.mirror2, self.mirror1, self.cavity_medium, self.slab,
                            self.d2, self.d1)


def default_settings(d_eff: float, rel_tol: float = 1e-8, **kw):
    """Outer (xi) and inner (k) settings with decay-length scale hints."""
    outer = QuadratureSettings(rel_tol=rel_tol, scale=C / (2.0 * d_eff), **kw)
    inner = QuadratureSettings(rel_tol=rel_tol / 10, scale=1.0 / (2.0 * d_eff), **kw)
    return outer, inner


def _resolve(settings, d_eff):
    """Accept None, a QuadratureSettings (tolerances only), or an (outer, inner) pair."""
    if settings is None:
        return default_settings(d_eff)
    if isinstance(settings, QuadratureSettings):
        return (
            QuadratureSettings(settings.rel_tol, settings.abs_tol, settings.max_evaluations,
                               C / (2.0 * d_eff)),
            QuadratureSettings(settings.rel_tol / 10, settings.abs_tol,
                               settings.max_evaluations, 1.0 / (2.0 * d_eff)),
        )
    return settings


def _decay(kap, d):
    if math.isinf(d):
        return np.zeros_like(kap)
    return np.exp(-2.0 * kap * d)


def denominator_N(r, t, r1, r2, kap, d1, d2):
    """Multiple-reflection denominator N^q.

    ``1 - r (r1 e^{-2 kappa d1} + r2 e^{-2 kappa d2}) + (r^2 - t^2) r1 r2 e^{-2 kappa (d1 + d2)}``.
    Propagation inside the slab is carried by ``t``, so the last exponent
    holds the gap lengths only.
    """
    e1, e2 = _decay(kap, d1), _decay(kap, d2)
    n = 1.0 - r * (r1 * e1 + r2 * e2) + (r * r - t * t) * r1 * r2 * e1 * e2
    if np.any(n <= DENOMINATOR_FLOOR):
        raise DegenerateDenominatorError("cavity resonance/degenerate denominator")
    return n


@dataclass
class _State:
    """Everything the integrands need at one frequency and an array of k."""

    xi: float
    k: np.ndarray
    eps: float
    mu: float
    n_sq: float
    kappa: np.ndarray
    r: dict
    t: dict
    r1: dict
    r2: dict
    e1: np.ndarray
    e2: np.ndarray


def cavity_state(config: CavityConfig, xi, k) -> _State:
    medium = config.cavity_medium
    eps, mu = float(medium.eps(xi)), float(medium.mu(xi))
    kap = optics.kappa(eps * mu, xi, k)
    r, t, r1, r2 = {}, {}, {}, {}
    for q in POLARIZATIONS:
        r[q], t[q] = optics.slab_rt(q, config.slab, medium, xi, k)
        r1[q] = 0.0 if math.isinf(config.d1) else optics.mirror_reflection(q, config.mirror1, medium, xi, k)
        r2[q] = 0.0 if math.isinf(config.d2) else optics.mirror_reflection(q, config.mirror2, medium, xi, k)
    return _State(xi, np.asarray(k, dtype=float), eps, mu, eps * mu, kap, r, t, r1, r2,
                  _decay(kap, config.d1), _decay(kap, config.d2))


def _mirror_term(st: _State, q, config):
    """(r2 e^{-2 kappa d2} - r1 e^{-2 kappa d1}) / N^q."""
    n = denominator_N(st.r[q], st.t[q], st.r1[q], st.r2[q], st.kappa, config.d1, config.d2)
    return (st.r2[q] * st.e2 - st.r1[q] * st.e1) / n


def g_difference(q, st: _State, config: CavityConfig):
    """g_{q2}(i xi, k; 0) - g_{q1}(i xi, k; d1) for one polarization."""
    q = optics._pol(q)
    r, t = st.r[q], st.t[q]
    screen = 1.0 if q is Polarization.S else 1.0 / st.n_sq
    brace = (4.0 * st.kappa**2 * screen * r
             + (st.xi / C) ** 2 * (st.n_sq - 1.0) * ((1.0 + r) ** 2 - t * t) * q.delta)
    return -brace * _mirror_term(st, q, config)


@dataclass
class ForceBreakdown:
    """Per-area force on the slab (Pa) with its parts and error estimates.

    ``parts`` and ``errors`` are keyed by ``(component, polarization)`` with
    component in ``{"f1", "f2"}`` (split route) or ``{"total"}`` (direct route).
    """

    total: float
    total_error: float
    f1: Optional[float]
    f2: Optional[float]
    f1_error: Optional[float]
    f2_error: Optional[float]
    parts: dict
    errors: dict
    d_ref: float
    converged: bool
    evaluations: int
    method: str

    def coefficient(self, value: Optional[float] = None) -> float:
        """Dimensionless ``value * d_ref^4 / (hbar c)`` (defaults to the total)."""
        value = self.total if value is None else value
        return value * self.d_ref**4 / HBAR_C

    @property
    def C_total(self) -> float:
        return self.coefficient(self.total)

    @property
    def C_f1(self) -> Optional[float]:
        return None if self.f1 is None else self.coefficient(self.f1)

    @property
    def C_f2(self) -> Optional[float]:
        return None if self.f2 is None else self.coefficient(self.f2)


def force_split(config: CavityConfig, settings=None) -> ForceBreakdown:
    """Screened Casimir force f1 and medium-assisted force f2 on the slab.

    ``settings`` is None, a QuadratureSettings whose tolerances are used with
    automatic scale hints, or an explicit ``(outer, inner)`` pair.
    """
    outer, inner = _resolve(settings, config.d_ref)
    medium = config.cavity_medium
    vacuum_like = medium.is_vacuum
    pre1 = HBAR / (2.0 * math.pi**2)
    pre2 = HBAR / (8.0 * math.pi**2 * C**2)

    def integrand(xi, k):
        st = cavity_state(config, xi, k)
        out = np.zeros((4, st.k.size))
        f2_weight = (xi**2 * st.mu * (st.n_sq - 1.0) * pre2) * st.k / st.kappa
        for i, q in enumerate(POLARIZATIONS):
            m = _mirror_term(st, q, config)
            screen = st.mu if q is Polarization.S else 1.0 / st.eps
            out[i] = pre1 * st.k * st.kappa * screen * st.r[q] * m
            if not vacuum_like:
                r, t = st.r[q], st.t[q]
                out[2 + i] = f2_weight * ((1.0 + r) ** 2 - t * t) * q.delta * m
        return out

    res = integrate_double(integrand, outer, inner)
    v, e = res.value, res.error_estimate
    parts = {("f1", "p"): v[0], ("f1", "s"): v[1], ("f2", "p"): v[2], ("f2", "s"): v[3]}
    errors = {("f1", "p"): e[0], ("f1", "s"): e[1], ("f2", "p"): e[2], ("f2", "s"): e[3]}
    f1, f2 = v[0] + v[1], v[2] + v[3]
    return ForceBreakdown(
        total=f1 + f2, total_error=float(e.sum()), f1=f1, f2=f2,
        f1_error=e[0] + e[1], f2_error=e[2] + e[3], parts=parts, errors=errors,
        d_ref=config.d_ref, converged=res.converged, evaluations=res.evaluations,
        method="split",
    )


def force_total_direct(config: CavityConfig, settings=None) -> ForceBreakdown:
    """Total slab force from the unsplit g-difference integrand (cross-check path)."""
    outer, inner = _resolve(settings, config.d_ref)
    pre = -HBAR / (8.0 * math.pi**2)

    def integrand(xi, k):
        st = cavity_state(config, xi, k)
        w = pre * st.k / st.kappa * st.mu
        return np.array([w * g_difference(q, st, config) for q in POLARIZATIONS])

    res = integrate_double(integrand, outer, inner)
    v, e = res.value, res.error_estimate
    return ForceBreakdown(
        total=v[0] + v[1], total_error=float(e.sum()), f1=None, f2=None,
        f1_error=None, f2_error=None,
        parts={("total", "p"): v[0], ("total", "s"): v[1]},
        errors={("total", "p"): e[0], ("total", "s"): e[1]},
        d_ref=config.d_ref, converged=res.converged, evaluations=res.evaluations,
        method="direct",
    )


# --- force on the cavity medium -------------------------------------------


def medium_force_density(z, mirror: MirrorSpec, medium: Material, settings=None, *,
                         other_mirror: Optional[MirrorSpec] = None,
                         cavity_length: float = math.inf) -> IntegralResult:
    """Force per volume (N/m^3) on the medium at distance ``z`` from ``mirror``.

    Positive means attraction toward ``mirror``. With ``other_mirror`` and a
    finite ``cavity_length`` the multiple reflections between both mirrors
    are included. ``z`` may be an array; the result is then vector-valued.
    """
    z_arr = np.atleast_1d(np.asarray(z, dtype=float))
    if np.any(z_arr <= 0):
        raise ValueError("z must be > 0")
    outer, inner = _resolve(settings, float(z_arr.min()))
    pre = HBAR / (4.0 * math.pi**2 * C**2)
    coupled = other_mirror is not None and not math.isinf(cavity_length)

    def integrand(xi, k):
        eps, mu = float(medium.eps(xi)), float(medium.mu(xi))
        n_sq = eps * mu
        if n_sq == 1.0:
            return np.zeros((z_arr.size, np.size(k)))
        kap = optics.kappa(n_sq, xi, k)
        s = 0.0
        for q in POLARIZATIONS:
            ri = optics.mirror_reflection(q, mirror, medium, xi, k)
            if coupled:
                ro = optics.mirror_reflection(q, other_mirror, medium, xi, k)
                ri = ri / (1.0 - ri * ro * np.exp(-2.0 * kap * cavity_length))
            s = s + q.delta * ri
        w = pre * xi**2 * mu * (n_sq - 1.0) * k * s
        return w[None, :] * np.exp(-2.0 * np.outer(z_arr, kap))

    res = integrate_double(integrand, outer, inner)
    if np.ndim(z) == 0:
        return IntegralResult(float(res.value[0]), float(res.error_estimate[0]),
                              res.evaluations, res.converged)
    return res


def _check_index_matched(config: CavityConfig):
    if not (isinstance(config.slab, RealSlab) and config.slab.material == config.cavity_medium):
        raise ConfigurationError("medium force requires a slab index-matched to the cavity medium")


def medium_layer_force(config: CavityConfig, settings=None, method: str = "analytic") -> IntegralResult:
    """Force per area on a layer of the cavity medium occupying the slab region.

    ``method="analytic"`` integrates the force density over the layer in
    closed form inside the (xi, k) integrand. ``method="density"`` integrates
    :func:`medium_force_density` numerically over z with a Gauss-Kronrod rule
    on each side; its error adds the rule difference to the density errors.
    """
    _check_index_matched(config)
    ds = config.slab.thickness
    medium = config.cavity_medium
    L = config.length
    if method == "density":
        return _layer_force_from_density(config, settings)
    if method != "analytic":
        raise ValueError(f"unknown method {method!r}")
    outer, inner = _resolve(settings, config.d_ref)
    pre = HBAR / (4.0 * math.pi**2 * C**2)

    def layer(kap, d):
        if math.isinf(d):
            return np.zeros_like(kap)
        return np.exp(-2.0 * kap * d) * -np.expm1(-2.0 * kap * ds) / (2.0 * kap)

    def integrand(xi, k):
        eps, mu = float(medium.eps(xi)), float(medium.mu(xi))
        n_sq = eps * mu
        kap = optics.kappa(n_sq, xi, k)
        s = 0.0
        for q in POLARIZATIONS:
            r1 = 0.0 if math.isinf(config.d1) else optics.mirror_reflection(q, config.mirror1, medium, xi, k)
            r2 = 0.0 if math.isinf(config.d2) else optics.mirror_reflection(q, config.mirror2, medium, xi, k)
            den = 1.0 - r1 * r2 * _decay(kap, L)
            s = s + q.delta * (r2 * layer(kap, config.d2) - r1 * layer(kap, config.d1)) / den
        return pre * xi**2 * mu * (n_sq - 1.0) * k * s

    return integrate_double(integrand, outer, inner)


def _layer_force_from_density(config: CavityConfig, settings) -> IntegralResult:
    ds = config.slab.thickness
    total, err, evals, conv = 0.0, 0.0, 0, True
    sides = ((config.d2, config.mirror2, config.mirror1, 1.0),
             (config.d1, config.mirror1, config.mirror2, -1.0))
    for d, mirror, other, sign in sides:
        if math.isinf(d):
            continue
        half = 0.5 * ds
        z = d + half + half * NODES
        res = medium_force_density(z, mirror, config.cavity_medium, settings,
                                   other_mirror=other, cavity_length=config.length)
        kron = half * (KRONROD_WEIGHTS @ res.value)
        gauss = half * (GAUSS_WEIGHTS @ res.value)
        total += sign * kron
        err += abs(kron - gauss) + half * (KRONROD_WEIGHTS @ res.error_estimate)
        evals += res.evaluations
        conv &= res.converged
    return IntegralResult(float(total), float(err), evals, conv)


# --- atom-mirror forces ----------------------------------------------------


@dataclass
class AtomForceResult:
    """Force on an atom (N), positive for attraction toward the mirror.

    ``coefficient`` is ``value * z^5 / (hbar c alpha0)`` in every regime.
    """

    value: float | np.ndarray
    error: float | np.ndarray
    regime: str
    z: float | np.ndarray
    alpha0: float
    converged: bool = True
    evaluations: int = 0

    @property
    def coefficient(self):
        return self.value * np.asarray(self.z) ** 5 / (HBAR_C * self.alpha0)


def transparency_frequency(*objs) -> float:
    """Largest model resonance or plasma frequency among mirrors, media and atoms.

    A diagnostic for choosing asymptotic regimes; it does not enter any force.
    """
    freqs = [0.0]
    for obj in objs:
        if isinstance(obj, Material):
            freqs += [obj.eps.characteristic_frequency(), obj.mu.characteristic_frequency()]
        elif isinstance(obj, Stack):
            freqs.append(transparency_frequency(*obj.materials()))
        elif isinstance(obj, AtomPolarizability):
            freqs.append(obj.characteristic_frequency())
    return max(freqs)


def _atom_result(res, z, regime, pol, scalar):
    if scalar:
        return AtomForceResult(float(res.value[0]), float(res.error_estimate[0]), regime,
                               float(z[0]), pol.static, res.converged, res.evaluations)
    return AtomForceResult(res.value, res.error_estimate, regime, z, pol.static,
                           res.converged, res.evaluations)


def _zs(z):
    z_arr = np.atleast_1d(np.asarray(z, dtype=float))
    if np.any(z_arr <= 0):
        raise ValueError("z must be > 0")
    return z_arr, np.ndim(z) == 0


def atom_force_full(z, mirror: MirrorSpec, medium: Material, pol: AtomPolarizability,
                    settings=None) -> AtomForceResult:
    """Force on an atom of a dilute medium at distance ``z`` from a single mirror."""
    return _atom_full(z, mirror, medium, pol, settings, zhou_spruch=False)


def _atom_full(z, mirror, medium, pol, settings, zhou_spruch):
    z_arr, scalar = _zs(z)
    outer, inner = _resolve(settings, float(z_arr.min()))
    pre = HBAR / (math.pi * C**2)

    def integrand(xi, k):
        eps, mu = float(medium.eps(xi)), float(medium.mu(xi))
        n_sq = eps * mu
        kap = optics.kappa(n_sq, xi, k)
        rp = optics.mirror_reflection(Polarization.P, mirror, medium, xi, k)
        rs = optics.mirror_reflection(Polarization.S, mirror, medium, xi, k)
        if zhou_spruch:
            # xi^2 (2 kappa^2 c^2 / (n^2 xi^2) - 1) written without the 1/xi^2
            w = (2.0 * kap**2 * C**2 / n_sq - xi**2) * rp - xi**2 * rs
        else:
            w = xi**2 * (rp - rs)
        w = pre * mu * float(eval_alpha(pol, xi)) * k * w
        return w[None, :] * np.exp(-2.0 * np.outer(z_arr, kap))

    res = integrate_double(integrand, outer, inner)
    return _atom_result(res, z_arr, "zs-full" if zhou_spruch else "full", pol, scalar)


def _nonretarded_settings(settings, mirror, medium, pol):
    omega = transparency_frequency(mirror, medium, pol) or 1.0
    rel_tol = 1e-8
    if isinstance(settings, QuadratureSettings):
        rel_tol = settings.rel_tol
    elif settings is not None:
        return settings
    return (QuadratureSettings(rel_tol=rel_tol, scale=omega),
            QuadratureSettings(rel_tol=rel_tol / 10, scale=1.0))


def atom_force_nonretarded(z, mirror: MirrorSpec, medium: Material, pol: AtomPolarizability,
                           settings=None) -> AtomForceResult:
    """Short-distance (Coulomb-type, ~1/z^2) atom force from nonretarded reflections.

    Diverges for ideal mirrors, which never become transparent.
    """
    if isinstance(mirror, IDEAL):
        raise ValueError("nonretarded atom force diverges for an ideal mirror")
    z_arr, scalar = _zs(z)
    outer, inner = _nonretarded_settings(settings, mirror, medium, pol)

    def integrand(xi, u):
        mu = float(medium.mu(xi))
        w = xi**2 * mu * float(eval_alpha(pol, xi)) * u * np.exp(-u)
        rows = []
        for zz in z_arr:
            k = u / (2.0 * zz)
            rp = optics.reflection_nonretarded(Polarization.P, mirror, medium, xi, k)
            rs = optics.reflection_nonretarded(Polarization.S, mirror, medium, xi, k)
            rows.append(HBAR / (4.0 * math.pi * C**2 * zz**2) * w * (rp - rs))
        return np.array(rows)

    res = integrate_double(integrand, outer, inner)
    return _atom_result(res, z_arr, "nonretarded", pol, scalar)


def _static_far_prefactor(medium: Material, pol: AtomPolarizability, z_arr):
    try:
        eps0, _, n0 = static_values(medium)
    except StaticLimitError as exc:
        raise StaticLimitError(f"far-zone atom force needs a finite static medium: {exc}") from exc
    return 3.0 * HBAR_C * pol.static / (4.0 * math.pi * n0 * eps0 * z_arr**5)


def _far(z, mirror, medium, pol, settings, weight_p, regime):
    z_arr, scalar = _zs(z)
    settings = settings if isinstance(settings, QuadratureSettings) else QuadratureSettings()
    settings = settings.with_scale(1.0)

    def f(p):
        rp = optics.reflection_pform(Polarization.P, mirror, medium, 0.0, p, static=True)
        rs = optics.reflection_pform(Polarization.S, mirror, medium, 0.0, p, static=True)
        return (weight_p(p) * rp - rs) / p**4

    res = integrate_tail_interval(f, 1.0, settings)
    pre = _static_far_prefactor(medium, pol, z_arr)
    value = pre * res.value
    error = pre * res.error_estimate
    if scalar:
        return AtomForceResult(float(value[0]), float(error[0]), regime, float(z_arr[0]),
                               pol.static, res.converged, res.evaluations)
    return AtomForceResult(value, error, regime, z_arr, pol.static, res.converged, res.evaluations)


def atom_force_far(z, mirror: MirrorSpec, medium: Material, pol: AtomPolarizability,
                   settings=None) -> AtomForceResult:
    """Large-distance (screened Casimir-Polder, ~1/z^5) atom force from static values."""
    return _far(z, mirror, medium, pol, settings, lambda p: 1.0, "far")


def zs_atom_force(z, mirror: MirrorSpec, medium: Material, pol: AtomPolarizability,
                  settings=None, regime: str = "full") -> AtomForceResult:
    """Zhou-Spruch atom force (atom embedded in the medium) for comparison.

    ``regime`` is ``"full"``, ``"near"`` (van der Waals, ~1/z^4) or
    ``"far"`` (Casimir-Polder, ~1/z^5).
    """
    if regime == "full":
        return _atom_full(z, mirror, medium, pol, settings, zhou_spruch=True)
    if regime == "far":
        return _far(z, mirror, medium, pol, settings, lambda p: 2.0 * p * p - 1.0, "zs-far")
    if regime != "near":
        raise ValueError(f"unknown regime {regime!r}")
    z_arr, scalar = _zs(z)
    outer, inner = _nonretarded_settings(settings, mirror, medium, pol)

    def integrand(xi, u):
        eps = float(medium.eps(xi))
        w = float(eval_alpha(pol, xi)) / eps * u**3 * np.exp(-u)
        rows = []
        for zz in z_arr:
            rp = optics.reflection_nonretarded(Polarization.P, mirror, medium, xi, u / (2.0 * zz))
            rows.append(HBAR / (8.0 * math.pi * zz**4) * w * rp)
        return np.array(rows)

    res = integrate_double(integrand, outer, inner)
    return _atom_result(res, z_arr, "zs-near", pol, scalar)
