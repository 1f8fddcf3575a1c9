"""Response functions on the imaginary frequency axis.

All models are causal and real for ``xi > 0``:

* ``Constant``   eps(i xi) = value
* ``Drude``      eps(i xi) = 1 + wp^2 / (xi (xi + gamma))
* ``Plasma``     eps(i xi) = 1 + wp^2 / xi^2
* ``LorentzSum`` eps(i xi) = 1 + sum_j S_j w_j^2 / (w_j^2 + xi^2 + gamma_j xi)

The same models serve for the permeability. Frequencies are angular (rad/s).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

ArrayLike = Union[float, np.ndarray]


class StaticLimitError(ValueError):
    """A model has no finite zero-frequency value."""


@dataclass(frozen=True)
class Constant:
    value: float = 1.0

    def __post_init__(self):
        if not self.value >= 1.0:
            raise ValueError(f"Constant response must be >= 1, got {self.value}")

    def __call__(self, xi: ArrayLike) -> ArrayLike:
        xi = np.asarray(xi, dtype=float)
        return np.full_like(xi, self.value)[()]

    def static(self) -> float:
        return self.value

    def characteristic_frequency(self) -> float:
        return 0.0


@dataclass(frozen=True)
class Drude:
    plasma_frequency: float
    damping: float = 0.0

    def __post_init__(self):
        if self.plasma_frequency <= 0 or self.damping < 0:
            raise ValueError("Drude model needs plasma_frequency > 0 and damping >= 0")

    def __call__(self, xi: ArrayLike) -> ArrayLike:
        xi = np.asarray(xi, dtype=float)
        if np.any(xi <= 0):
            raise StaticLimitError("Drude model: static value undefined (eps diverges at xi = 0)")
        return (1.0 + self.plasma_frequency**2 / (xi * (xi + self.damping)))[()]

    def static(self) -> float:
        raise StaticLimitError("Drude model has no finite static value")

    def characteristic_frequency(self) -> float:
        return self.plasma_frequency


@dataclass(frozen=True)
class Plasma:
    plasma_frequency: float

    def __post_init__(self):
        if self.plasma_frequency <= 0:
            raise ValueError("Plasma model needs plasma_frequency > 0")

    def __call__(self, xi: ArrayLike) -> ArrayLike:
        xi = np.asarray(xi, dtype=float)
        if np.any(xi <= 0):
            raise StaticLimitError("Plasma model: static value undefined (eps diverges at xi = 0)")
        return (1.0 + (self.plasma_frequency / xi) ** 2)[()]

    def static(self) -> float:
        raise StaticLimitError("Plasma model has no finite static value")

    def characteristic_frequency(self) -> float:
        return self.plasma_frequency


@dataclass(frozen=True)
class LorentzSum:
    """Sum of Lorentz oscillators given as ``(strength, resonance, damping)`` triples."""

    oscillators: tuple = ()

    def __post_init__(self):
        osc = tuple(tuple(float(v) for v in o) for o in self.oscillators)
        for s, w, g in osc:
            if s < 0 or w <= 0 or g < 0:
                raise ValueError(f"invalid Lorentz oscillator {(s, w, g)}")
        object.__setattr__(self, "oscillators", osc)

    def __call__(self, xi: ArrayLike) -> ArrayLike:
        xi = np.asarray(xi, dtype=float)
        if np.any(xi < 0):
            raise ValueError("xi must be >= 0")
        out = np.ones_like(xi)
        for s, w, g in self.oscillators:
            out = out + s * w**2 / (w**2 + xi * xi + g * xi)
        return out[()]

    def static(self) -> float:
        return 1.0 + sum(s for s, _, _ in self.oscillators)

    def characteristic_frequency(self) -> float:
        return max((w for _, w, _ in self.oscillators), default=0.0)


DispersionSpec = Union[Constant, Drude, Plasma, LorentzSum]


@dataclass(frozen=True)
class Material:
    """A magnetodielectric with permittivity ``eps`` and permeability ``mu``."""

    eps: DispersionSpec = field(default_factory=Constant)
    mu: DispersionSpec = field(default_factory=Constant)

    def n_sq(self, xi: ArrayLike) -> ArrayLike:
        return self.eps(xi) * self.mu(xi)

    def swapped(self) -> "Material":
        """The dual material with eps and mu exchanged."""
        return Material(eps=self.mu, mu=self.eps)

    @property
    def is_vacuum(self) -> bool:
        return self.eps == Constant(1.0) and self.mu == Constant(1.0)


VACUUM = Material()


def eval_eps(material: Material, xi: ArrayLike) -> ArrayLike:
    return material.eps(xi)


def eval_mu(material: Material, xi: ArrayLike) -> ArrayLike:
    return material.mu(xi)


def static_values(material: Material) -> tuple[float, float, float]:
    """Return ``(eps0, mu0, n0)``; raises StaticLimitError for Drude/plasma models."""
    eps0 = material.eps.static()
    mu0 = material.mu.static()
    return eps0, mu0, math.sqrt(eps0 * mu0)


@dataclass(frozen=True)
class Oscillator:
    """Single-resonance polarizability alpha(i xi) = alpha0 w0^2 / (w0^2 + xi^2).

    ``static`` is a volume (m^3, Gaussian convention), ``resonance`` in rad/s.
    """

    static: float = 0.0
    resonance: float = 1.0

    def __post_init__(self):
        if self.static < 0 or self.resonance <= 0:
            raise ValueError("polarizability needs static >= 0 and resonance > 0")

    def __call__(self, xi: ArrayLike) -> ArrayLike:
        xi = np.asarray(xi, dtype=float)
        w2 = self.resonance**2
        return (self.static * w2 / (w2 + xi * xi))[()]


@dataclass(frozen=True)
class AtomPolarizability:
    alpha_e: Oscillator = field(default_factory=Oscillator)
    alpha_m: Oscillator = field(default_factory=Oscillator)

    @property
    def static(self) -> float:
        return self.alpha_e.static + self.alpha_m.static

    def swapped(self) -> "AtomPolarizability":
        return AtomPolarizability(alpha_e=self.alpha_m, alpha_m=self.alpha_e)

    def characteristic_frequency(self) -> float:
        return max(o.resonance for o in (self.alpha_e, self.alpha_m) if o.static > 0) if self.static > 0 else 0.0


def eval_alpha(pol: AtomPolarizability, xi: ArrayLike) -> ArrayLike:
    """Total polarizability alpha_e(i xi) + alpha_m(i xi)."""
    return pol.alpha_e(xi) + pol.alpha_m(xi)


def dilute_medium(pol: AtomPolarizability, number_density: float) -> Material:
    """Medium of ``number_density`` atoms per m^3 with eps - 1 = 4 pi N alpha_e, mu - 1 = 4 pi N alpha_m."""

    def lorentz(osc: Oscillator) -> DispersionSpec:
        strength = 4.0 * math.pi * number_density * osc.static
        if strength == 0:
            return Constant(1.0)
        return LorentzSum(((strength, osc.resonance, 0.0),))

    return Material(eps=lorentz(pol.alpha_e), mu=lorentz(pol.alpha_m))
