"""
Ideal mirrors and slabs in a dielectric
=======================================

Perfect mirrors and a perfect slab in a non-dispersive medium have
closed-form forces. Here the numerical route reproduces them.
"""

import math

from lorentz_casimir import (
    CavityConfig,
    Constant,
    IdealConductive,
    IdealPermeable,
    Material,
    force_split,
    ideal_f1,
    ideal_f2,
)

# Semi-infinite cavity: mirror 1 is pushed to infinity, the slab sits a
# distance d from mirror 2. Positive force points toward mirror 2.
d = 1e-6
medium = Material(Constant(2.0))
kinds = {"c": IdealConductive(), "p": IdealPermeable()}

print(f"{'tag':>4} {'f1 numeric':>14} {'f1 exact':>14} {'f2 numeric':>14} {'f2 exact':>14}")
for tag in ("cc", "pp", "cp", "pc"):
    cfg = CavityConfig(kinds[tag[0]], kinds[tag[0]], medium, kinds[tag[1]], math.inf, d)
    res = force_split(cfg)
    print(f"{tag:>4} {res.f1:14.6e} {ideal_f1(d, tag, 2.0, 1.0):14.6e} "
          f"{res.f2:14.6e} {ideal_f2(d, tag, 2.0, 1.0):14.6e}")

# The medium-assisted share f2/f1 grows with the refractive index and
# saturates at 1/3 for dense media.
for n_sq in (1.0, 2.0, 10.0, 100.0, 1e4):
    res = force_split(CavityConfig(IdealConductive(), IdealConductive(),
                                   Material(Constant(n_sq)), IdealConductive(), math.inf, d))
    print(f"n^2 = {n_sq:8g}   f2/f1 = {res.f2 / res.f1:.6f}")
