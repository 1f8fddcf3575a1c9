"""
An atom in front of a mirror, inside a medium
=============================================

The medium-assisted force on an atom next to a mirror, compared across
regimes and against the Zhou-Spruch style expression.
"""

import math

import numpy as np

from lorentz_casimir import (
    C,
    VACUUM,
    AtomPolarizability,
    IdealConductive,
    LorentzSum,
    Material,
    Oscillator,
    Stack,
    atom_force_far,
    atom_force_full,
    atom_force_nonretarded,
    zs_atom_force,
)

omega = 1e15
atom = AtomPolarizability(Oscillator(1e-30, omega))

# Far from a perfect conductor the coefficient F z^5 / (hbar c alpha0)
# approaches 1/2pi, one third of the Zhou-Spruch value.
for f in (1, 5, 20, 100):
    z = f * C / omega
    full = atom_force_full(z, IdealConductive(), VACUUM, atom).coefficient
    zs = zs_atom_force(z, IdealConductive(), VACUUM, atom).coefficient
    print(f"z = {f:4d} c/omega  C = {full:.6f}  C_zs = {zs:.6f}  ratio = {full / zs:.4f}")
print("far limit:", atom_force_far(1.0, IdealConductive(), VACUUM, atom).coefficient,
      "=", 1 / (2 * math.pi))

# Close to a dielectric the force falls off as 1/z^2, much slower than the
# 1/z^4 of the Zhou-Spruch near-field form.
glass = Stack.half_space(Material(LorentzSum(((3.0, 2 * omega, 0.1 * omega),))))
z = np.geomspace(1e-3, 1e-1, 5) * C / omega
nr = atom_force_nonretarded(z, glass, VACUUM, atom).value
full = atom_force_full(z, glass, VACUUM, atom).value
for zi, a, b in zip(z, full, nr):
    print(f"z = {zi * 1e9:8.3f} nm  full = {a:.4e} N  nonretarded = {b:.4e} N")

# An electric atom near a magnetic mirror is pushed away.
ferrite = Stack.half_space(Material(LorentzSum(((0.0, omega, 0.0),)),
                                    LorentzSum(((3.0, 2 * omega, 0.1 * omega),))))
print("magnetic mirror:", atom_force_full(C / omega, ferrite, VACUUM, atom).value)
