"""Physical constants (SI values from CODATA via scipy)."""

from scipy.constants import c as C
from scipy.constants import hbar as HBAR

HBAR_C = HBAR * C

__all__ = ["C", "HBAR", "HBAR_C"]
