"""Closed-form forces for ideally reflecting slabs and mirrors.

Semi-infinite cavity, static medium (eps0, mu0), slab and mirror each either
perfectly conductive (r^p = 1, r^s = -1) or infinitely permeable (signs
reversed). The distance integrals reduce to

    sum_n s^n / n^4 = zeta(4) = pi^4 / 90              (same type, s = +1)
    sum_n (-1)^(n+1) / n^4 = eta(4) = 7/8 * zeta(4)    (different type)

which is where the -7/8 (Boyer) factor of mixed configurations comes from.
All results are forces per area in Pa, positive toward the mirror.
"""

from __future__ import annotations

import enum
import math

from .constants import HBAR_C

ETA4_OVER_ZETA4 = 7.0 / 8.0


class IdealConfigTag(enum.Enum):
    """Mirror type followed by slab type: c = conductive, p = permeable.

    With this letter order f^pc = -(7/8) f^cc and
    f^cp = -(7/8) (n0^2 + 2) / (2 n0^2 + 1) f^cc.
    """

    CC = "cc"
    PP = "pp"
    CP = "cp"
    PC = "pc"

    @property
    def mirror_type(self) -> str:
        return "conductive" if self.value[0] == "c" else "permeable"

    @property
    def slab_type(self) -> str:
        return "conductive" if self.value[1] == "c" else "permeable"

    @property
    def same_type(self) -> bool:
        return self.value[0] == self.value[1]


def _tag(tag) -> IdealConfigTag:
    return tag if isinstance(tag, IdealConfigTag) else IdealConfigTag(str(tag).lower())


def _check(d, eps0, mu0):
    if not d > 0:
        raise ValueError("distance must be > 0")
    if not (eps0 > 0 and mu0 > 0):
        raise ValueError("static eps0 and mu0 must be > 0")


def ideal_f1(d: float, tag, eps0: float = 1.0, mu0: float = 1.0) -> float:
    """Medium-screened Casimir force; -7/8 for a slab and mirror of different type."""
    tag = _tag(tag)
    _check(d, eps0, mu0)
    n0_sq = eps0 * mu0
    factor = 1.0 if tag.same_type else -ETA4_OVER_ZETA4
    return factor * HBAR_C * math.pi**2 / (480.0 * d**4) * math.sqrt(mu0 / eps0) * (1.0 + 1.0 / n0_sq)


def ideal_f2(d: float, tag, eps0: float = 1.0, mu0: float = 1.0) -> float:
    """Medium-assisted force; its sign follows the mirror type alone (+ conductive)."""
    tag = _tag(tag)
    _check(d, eps0, mu0)
    n0_sq = eps0 * mu0
    magnitude = 1.0 if tag.same_type else ETA4_OVER_ZETA4
    sign = 1.0 if tag.mirror_type == "conductive" else -1.0
    return sign * magnitude * HBAR_C * math.pi**2 / (1440.0 * d**4) * math.sqrt(mu0 / eps0) * (1.0 - 1.0 / n0_sq)


def ideal_total(d: float, tag, eps0: float = 1.0, mu0: float = 1.0) -> float:
    return ideal_f1(d, tag, eps0, mu0) + ideal_f2(d, tag, eps0, mu0)


def ideal_cc_closed_form(d: float, eps0: float = 1.0, mu0: float = 1.0) -> float:
    """Total cc force written directly: (hbar c pi^2 / 720 d^4) sqrt(mu0/eps0) (2 + 1/n0^2)."""
    _check(d, eps0, mu0)
    return HBAR_C * math.pi**2 / (720.0 * d**4) * math.sqrt(mu0 / eps0) * (2.0 + 1.0 / (eps0 * mu0))


def ideal_cavity_total(d1: float, d2: float, tag1, tag2, eps0: float = 1.0, mu0: float = 1.0) -> float:
    """Finite cavity: force from the mirror-2 side minus that from the mirror-1 side.

    ``tag_i`` pairs the type of mirror i with the slab type; ``d1`` may be ``inf``.
    """
    f1 = 0.0 if math.isinf(d1) else ideal_total(d1, tag1, eps0, mu0)
    f2 = 0.0 if math.isinf(d2) else ideal_total(d2, tag2, eps0, mu0)
    return f2 - f1
