"""Perpendicular wave vectors and Fresnel coefficients on the imaginary axis.

Everything here is real arithmetic: at frequency ``i xi`` the response
functions are real and positive and all exponentials decay. Inputs broadcast,
so ``xi`` is typically a scalar and ``k`` an array of quadrature nodes.

Three parameterizations of the same reflection coefficients are provided:

* k-form: in-plane wave vector ``k``, ``kappa_l = sqrt(n_l^2 xi^2/c^2 + k^2)``
* nonretarded: every ``kappa_l`` replaced by ``k``
* p-form: ``kappa = n xi p / c`` and ``kappa_l = n (xi/c) s_l`` with
  ``s_l = sqrt(p^2 - 1 + n_l^2/n^2)``; valid down to ``xi = 0``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .constants import C
from .materials import Material


class Polarization(enum.Enum):
    S = "s"  # TE
    P = "p"  # TM

    @property
    def delta(self) -> int:
        """+1 for p, -1 for s."""
        return 1 if self is Polarization.P else -1


POLARIZATIONS = (Polarization.P, Polarization.S)


def _pol(q) -> Polarization:
    return q if isinstance(q, Polarization) else Polarization(str(q).lower())


@dataclass(frozen=True)
class IdealConductive:
    """Perfect conductor: r^p = +1, r^s = -1, t = 0."""

    def reflection_sign(self) -> int:
        return 1


@dataclass(frozen=True)
class IdealPermeable:
    """Infinitely permeable body: r^p = -1, r^s = +1, t = 0."""

    def reflection_sign(self) -> int:
        return -1


@dataclass(frozen=True)
class Stack:
    """Layered mirror listed from the cavity side inward.

    Each layer is ``(Material, thickness_m)``; the last one is the
    terminating half-space and must have ``thickness = math.inf``.
    """

    layers: tuple

    def __post_init__(self):
        layers = tuple((m, float(d)) for m, d in self.layers)
        if not layers:
            raise ValueError("Stack needs at least one layer")
        for m, d in layers[:-1]:
            if not (0.0 <= d < math.inf):
                raise ValueError(f"inner layer thickness must be finite and >= 0, got {d}")
        if layers[-1][1] != math.inf:
            raise ValueError("last Stack layer must be a half-space (thickness = inf)")
        object.__setattr__(self, "layers", layers)

    @classmethod
    def half_space(cls, material: Material) -> "Stack":
        return cls(((material, math.inf),))

    def materials(self):
        return [m for m, _ in self.layers]


@dataclass(frozen=True)
class RealSlab:
    material: Material
    thickness: float

    def __post_init__(self):
        if not self.thickness > 0:
            raise ValueError(f"slab thickness must be > 0, got {self.thickness}")


MirrorSpec = Union[IdealConductive, IdealPermeable, Stack]
SlabSpec = Union[RealSlab, IdealConductive, IdealPermeable]
IDEAL = (IdealConductive, IdealPermeable)


def kappa(n_sq, xi, k):
    """Perpendicular wave vector sqrt(n^2 xi^2 / c^2 + k^2) in 1/m."""
    xi = np.asarray(xi, dtype=float)
    k = np.asarray(k, dtype=float)
    if np.any((xi == 0) & (k == 0)):
        raise ValueError("kappa undefined for xi = k = 0")
    return np.sqrt(n_sq * (xi / C) ** 2 + k * k)[()]


def rho_interface(q, cavity, slab):
    """Single-interface coefficient from the medium ``cavity`` into ``slab``.

    ``cavity`` and ``slab`` are ``(eps, mu, kappa)`` triples.
    """
    q = _pol(q)
    eps, mu, ka = cavity
    eps_s, mu_s, ka_s = slab
    a, b = (eps, eps_s) if q is Polarization.P else (mu, mu_s)
    num = b * ka - a * ka_s
    return num / (b * ka + a * ka_s)


def _compose(q, media, thickness_factors):
    """Reflection of a layered structure seen from ``media[0]``.

    ``media`` lists ``(eps, mu, K)`` from the incidence side inward, where
    ``K`` is any quantity proportional to the layer's perpendicular wave
    vector. ``thickness_factors[j]`` is ``exp(-2 kappa_j d_j)`` for the finite
    layer ``media[j + 1]``.
    """
    r = rho_interface(q, media[-2], media[-1])
    for j in range(len(media) - 2, 0, -1):
        rho = rho_interface(q, media[j - 1], media[j])
        x = r * thickness_factors[j - 1]
        r = (rho + x) / (1.0 + rho * x)
    return r


def _medium_triple(material: Material, xi, kap):
    return material.eps(xi), material.mu(xi), kap


def slab_rt(q, spec: SlabSpec, cavity: Material, xi, k):
    """Whole-slab reflection and transmission ``(r, t)``."""
    q = _pol(q)
    if isinstance(spec, IDEAL):
        r = spec.reflection_sign() * q.delta
        shape = np.broadcast(np.asarray(xi), np.asarray(k)).shape
        return np.full(shape, float(r))[()], np.zeros(shape)[()]
    ka = kappa(cavity.n_sq(xi), xi, k)
    ka_s = kappa(spec.material.n_sq(xi), xi, k)
    rho = rho_interface(
        q, _medium_triple(cavity, xi, ka), _medium_triple(spec.material, xi, ka_s)
    )
    e1 = np.exp(-ka_s * spec.thickness)
    e2 = e1 * e1
    den = 1.0 - rho * rho * e2
    r = rho * (1.0 - e2) / den
    t = (1.0 - rho * rho) * e1 / den
    return r, t


def _ideal_reflection(q, spec, xi, k):
    shape = np.broadcast(np.asarray(xi), np.asarray(k)).shape
    return np.full(shape, float(spec.reflection_sign() * q.delta))[()]


def mirror_reflection(q, spec: MirrorSpec, cavity: Material, xi, k):
    """Reflection coefficient r^q(i xi, k) of a mirror seen from the cavity."""
    q = _pol(q)
    if isinstance(spec, IDEAL):
        return _ideal_reflection(q, spec, xi, k)
    media = [_medium_triple(cavity, xi, kappa(cavity.n_sq(xi), xi, k))]
    factors = []
    for mat, d in spec.layers:
        ka = kappa(mat.n_sq(xi), xi, k)
        media.append(_medium_triple(mat, xi, ka))
        if d != math.inf:
            factors.append(np.exp(-2.0 * ka * d))
    return _compose(q, media, factors)


def reflection_nonretarded(q, spec: MirrorSpec, cavity: Material, xi, k):
    """Nonretarded reflection: all perpendicular wave vectors set to ``k``."""
    q = _pol(q)
    if isinstance(spec, IDEAL):
        return _ideal_reflection(q, spec, xi, k)
    k = np.asarray(k, dtype=float)
    media = [_medium_triple(cavity, xi, k)]
    factors = []
    for mat, d in spec.layers:
        media.append(_medium_triple(mat, xi, k))
        if d != math.inf:
            factors.append(np.exp(-2.0 * k * d))
    return _compose(q, media, factors)


def reflection_pform(q, spec: MirrorSpec, cavity: Material, xi, p, static: bool = False):
    """Reflection in the variable ``p = c kappa / (n xi) >= 1``.

    With ``static=True`` all materials take their zero-frequency values and
    finite layers drop out of the phase factors (``xi -> 0`` limit).
    """
    q = _pol(q)
    p = np.asarray(p, dtype=float)
    if np.any(p < 1):
        raise ValueError("p must be >= 1")
    if isinstance(spec, IDEAL):
        return _ideal_reflection(q, spec, xi, p)

    def response(mat: Material):
        if static:
            return mat.eps.static(), mat.mu.static()
        return mat.eps(xi), mat.mu(xi)

    eps, mu = response(cavity)
    n_sq = eps * mu
    n = np.sqrt(n_sq)
    media = [(eps, mu, p)]
    factors = []
    for mat, d in spec.layers:
        eps_l, mu_l = response(mat)
        s = np.sqrt(p * p - 1.0 + eps_l * mu_l / n_sq)
        media.append((eps_l, mu_l, s))
        if d != math.inf:
            if static:
                factors.append(np.ones_like(s))
            else:
                factors.append(np.exp(-2.0 * n * (xi / C) * s * d))
    return _compose(q, media, factors)
