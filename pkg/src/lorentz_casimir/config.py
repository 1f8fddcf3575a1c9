"""TOML run configuration: schema, parsing, rendering and object builders.

Every physical quantity carries its unit in the key (``_m``, ``_rad_per_s``,
``_m3``). Materials are defined once under ``[materials.<name>]`` and referred
to by name, or given inline; ``"vacuum"`` is predefined. Distances may be
``inf`` to remove a mirror.
"""

from __future__ import annotations

import hashlib
import math
from typing import Annotated, Literal, Optional, Union

import numpy as np
import tomli
import tomli_w
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from . import materials as mat
from . import optics
from .forces import CavityConfig
from .quadrature import QuadratureSettings


class ConfigError(ValueError):
    """Malformed configuration: unknown key, wrong type, missing section."""


class PhysicalValueError(ValueError):
    """Well-formed configuration describing an impossible system."""


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class ConstantModel(_Strict):
    model: Literal["constant"] = "constant"
    value: float = 1.0


class DrudeModel(_Strict):
    model: Literal["drude"]
    plasma_frequency_rad_per_s: float
    damping_rad_per_s: float = 0.0


class PlasmaModel(_Strict):
    model: Literal["plasma"]
    plasma_frequency_rad_per_s: float


class OscillatorEntry(_Strict):
    strength: float
    resonance_rad_per_s: float
    damping_rad_per_s: float = 0.0


class LorentzModel(_Strict):
    model: Literal["lorentz"]
    oscillators: list[OscillatorEntry]


Dispersion = Annotated[
    Union[ConstantModel, DrudeModel, PlasmaModel, LorentzModel], Field(discriminator="model")
]


class MaterialModel(_Strict):
    eps: Dispersion = ConstantModel()
    mu: Dispersion = ConstantModel()


MaterialRef = Union[str, MaterialModel]


class IdealConductiveModel(_Strict):
    type: Literal["ideal-conductive"]


class IdealPermeableModel(_Strict):
    type: Literal["ideal-permeable"]


class LayerModel(_Strict):
    material: MaterialRef
    thickness_m: float


class StackModel(_Strict):
    type: Literal["stack"]
    layers: list[LayerModel]


class RealSlabModel(_Strict):
    type: Literal["real"]
    material: MaterialRef
    thickness_m: float


Mirror = Annotated[
    Union[IdealConductiveModel, IdealPermeableModel, StackModel], Field(discriminator="type")
]
Slab = Annotated[
    Union[IdealConductiveModel, IdealPermeableModel, RealSlabModel], Field(discriminator="type")
]
Tag = Literal["cc", "pp", "cp", "pc"]


class CavitySection(_Strict):
    mirror1: Mirror
    mirror2: Mirror
    slab: Slab
    medium: MaterialRef = "vacuum"
    d1_m: float
    d2_m: float


class IdealSection(_Strict):
    """Ideal mirrors and slab in a static medium; tags are mirror type then slab type."""

    tag1: Tag = "cc"
    tag2: Tag = "cc"
    eps0: float = 1.0
    mu0: float = 1.0
    d1_m: float = math.inf
    d2_m: float


class AtomSection(_Strict):
    mirror: Mirror
    medium: MaterialRef = "vacuum"
    z_m: float
    regime: Literal["full", "nonretarded", "far"] = "full"
    alpha_e_static_m3: float = 0.0
    alpha_e_resonance_rad_per_s: float = 1e16
    alpha_m_static_m3: float = 0.0
    alpha_m_resonance_rad_per_s: float = 1e16


class DensitySection(_Strict):
    mirror: Mirror
    medium: MaterialRef
    z_m: float
    other_mirror: Optional[Mirror] = None
    cavity_length_m: float = math.inf


class SweepSection(_Strict):
    variable: Literal["d1", "d2", "z"]
    start_m: float
    stop_m: float
    points: int = Field(ge=1)
    spacing: Literal["linear", "log"] = "linear"

    @model_validator(mode="after")
    def _order(self):
        if not self.start_m < self.stop_m:
            raise ValueError("sweep needs start_m < stop_m")
        return self

    def values(self) -> np.ndarray:
        if self.points == 1:
            return np.array([self.start_m])
        if self.spacing == "log":
            return np.geomspace(self.start_m, self.stop_m, self.points)
        return np.linspace(self.start_m, self.stop_m, self.points)


class QuadratureSection(_Strict):
    rel_tol: float = 1e-8
    abs_tol: float = 0.0
    max_evaluations: int = 1_000_000


class OutputSection(_Strict):
    units: Literal["si", "coef", "both"] = "both"
    format: Literal["csv", "json"] = "csv"
    path: Optional[str] = None


Mode = Literal["slab-force", "ideal", "density", "atom-force", "zs-compare", "validate"]
_REQUIRED = {"slab-force": "cavity", "ideal": "ideal", "density": "density",
             "atom-force": "atom", "zs-compare": "atom"}
_SWEEP_VARS = {"slab-force": {"d1", "d2"}, "ideal": {"d1", "d2"}, "density": {"z"},
               "atom-force": {"z"}, "zs-compare": {"z"}}


class RunConfig(_Strict):
    mode: Mode
    materials: dict[str, MaterialModel] = {}
    cavity: Optional[CavitySection] = None
    ideal: Optional[IdealSection] = None
    atom: Optional[AtomSection] = None
    density: Optional[DensitySection] = None
    sweep: Optional[SweepSection] = None
    quadrature: QuadratureSection = QuadratureSection()
    output: OutputSection = OutputSection()

    @model_validator(mode="after")
    def _mode_fields(self):
        section = _REQUIRED.get(self.mode)
        if section and getattr(self, section) is None:
            raise ValueError(f"mode {self.mode!r} requires a [{section}] section")
        if self.sweep and self.mode in _SWEEP_VARS and self.sweep.variable not in _SWEEP_VARS[self.mode]:
            raise ValueError(
                f"sweep.variable {self.sweep.variable!r} not valid for mode {self.mode!r}")
        return self

    def settings(self) -> QuadratureSettings:
        q = self.quadrature
        return QuadratureSettings(q.rel_tol, q.abs_tol, q.max_evaluations)


def _format_validation_error(exc: ValidationError) -> str:
    msgs = []
    for err in exc.errors():
        key = ".".join(str(p) for p in err["loc"]) or "<root>"
        if err["type"] == "extra_forbidden":
            msgs.append(f"unknown key {key!r}")
        else:
            msgs.append(f"{key}: {err['msg']}")
    return "; ".join(msgs)


def parse_config(text: str, **overrides) -> RunConfig:
    """Parse and validate TOML text; ``overrides`` replace top-level keys.

    Raises ConfigError for schema violations and PhysicalValueError when the
    described system is invalid (negative thickness, eps < 1, ...).
    """
    try:
        data = tomli.loads(text)
    except tomli.TOMLDecodeError as exc:
        raise ConfigError(f"invalid TOML: {exc}") from exc
    for key, value in overrides.items():
        if value is not None:
            data[key] = value
    try:
        cfg = RunConfig.model_validate(data)
    except ValidationError as exc:
        raise ConfigError(_format_validation_error(exc)) from exc
    check_physics(cfg)
    return cfg


def render_config(cfg: RunConfig) -> str:
    return tomli_w.dumps(cfg.model_dump(exclude_none=True))


def config_hash(cfg: RunConfig) -> str:
    return hashlib.sha256(render_config(cfg).encode()).hexdigest()


# --- builders ---------------------------------------------------------------


def build_dispersion(m) -> mat.DispersionSpec:
    if isinstance(m, ConstantModel):
        return mat.Constant(m.value)
    if isinstance(m, DrudeModel):
        return mat.Drude(m.plasma_frequency_rad_per_s, m.damping_rad_per_s)
    if isinstance(m, PlasmaModel):
        return mat.Plasma(m.plasma_frequency_rad_per_s)
    return mat.LorentzSum(tuple(
        (o.strength, o.resonance_rad_per_s, o.damping_rad_per_s) for o in m.oscillators))


def build_material(ref: MaterialRef, cfg: RunConfig) -> mat.Material:
    if isinstance(ref, str):
        if ref in cfg.materials:
            ref = cfg.materials[ref]
        elif ref == "vacuum":
            return mat.VACUUM
        else:
            raise ConfigError(f"unknown material {ref!r}")
    return mat.Material(build_dispersion(ref.eps), build_dispersion(ref.mu))


def build_mirror(m, cfg: RunConfig) -> optics.MirrorSpec:
    if isinstance(m, IdealConductiveModel):
        return optics.IdealConductive()
    if isinstance(m, IdealPermeableModel):
        return optics.IdealPermeable()
    return optics.Stack(tuple((build_material(l.material, cfg), l.thickness_m) for l in m.layers))


def build_slab(m, cfg: RunConfig) -> optics.SlabSpec:
    if isinstance(m, RealSlabModel):
        return optics.RealSlab(build_material(m.material, cfg), m.thickness_m)
    return build_mirror(m, cfg)


def build_cavity(cfg: RunConfig) -> CavityConfig:
    c = cfg.cavity
    return CavityConfig(build_mirror(c.mirror1, cfg), build_mirror(c.mirror2, cfg),
                        build_material(c.medium, cfg), build_slab(c.slab, cfg), c.d1_m, c.d2_m)


def build_polarizability(a: AtomSection) -> mat.AtomPolarizability:
    return mat.AtomPolarizability(
        mat.Oscillator(a.alpha_e_static_m3, a.alpha_e_resonance_rad_per_s),
        mat.Oscillator(a.alpha_m_static_m3, a.alpha_m_resonance_rad_per_s),
    )


def check_physics(cfg: RunConfig) -> None:
    """Build every physics object once so invalid values surface at parse time."""
    try:
        for m in cfg.materials.values():
            build_material(m, cfg)
        if cfg.cavity is not None:
            build_cavity(cfg)
        if cfg.ideal is not None:
            i = cfg.ideal
            if not (i.d2_m > 0 and i.d1_m > 0 and i.eps0 > 0 and i.mu0 > 0):
                raise ValueError("ideal: distances and static values must be > 0")
        if cfg.atom is not None:
            build_mirror(cfg.atom.mirror, cfg)
            build_material(cfg.atom.medium, cfg)
            build_polarizability(cfg.atom)
            if not cfg.atom.z_m > 0:
                raise ValueError("atom.z_m must be > 0")
        if cfg.density is not None:
            d = cfg.density
            build_mirror(d.mirror, cfg)
            build_material(d.medium, cfg)
            if d.other_mirror is not None:
                build_mirror(d.other_mirror, cfg)
            if not (d.z_m > 0 and d.cavity_length_m > 0):
                raise ValueError("density: z_m and cavity_length_m must be > 0")
        if cfg.sweep is not None and cfg.sweep.spacing == "log" and cfg.sweep.start_m <= 0:
            raise ValueError("log sweep needs start_m > 0")
        q = cfg.quadrature
        QuadratureSettings(q.rel_tol, q.abs_tol, q.max_evaluations)
    except ConfigError:
        raise
    except ValueError as exc:
        raise PhysicalValueError(str(exc)) from exc
