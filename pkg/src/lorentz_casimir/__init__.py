"""Vacuum Lorentz-force Casimir forces on a slab in a magnetodielectric planar cavity.

The force splits into a medium-screened Casimir part and a medium-assisted
part; the latter also acts on the cavity medium and on its atoms.
"""

from .constants import C, HBAR, HBAR_C
from .forces import (
    AtomForceResult,
    CavityConfig,
    ConfigurationError,
    DegenerateDenominatorError,
    ForceBreakdown,
    atom_force_far,
    atom_force_full,
    atom_force_nonretarded,
    denominator_N,
    force_split,
    force_total_direct,
    g_difference,
    medium_force_density,
    medium_layer_force,
    transparency_frequency,
    zs_atom_force,
)
from .ideal import IdealConfigTag, ideal_cavity_total, ideal_f1, ideal_f2, ideal_total
from .materials import (
    VACUUM,
    AtomPolarizability,
    Constant,
    Drude,
    LorentzSum,
    Material,
    Oscillator,
    Plasma,
    StaticLimitError,
    dilute_medium,
    eval_alpha,
    eval_eps,
    eval_mu,
    static_values,
)
from .optics import (
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
from .quadrature import (
    IntegralResult,
    QuadratureSettings,
    integrate_double,
    integrate_semi_infinite,
    integrate_tail_interval,
)

__version__ = "0.1.0"
