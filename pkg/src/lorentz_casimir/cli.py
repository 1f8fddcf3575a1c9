"""Command line interface: ``casimir <mode> --config run.toml``.

Exit codes: 0 ok, 1 validation failure, 2 config error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Optional

import numpy as np

from . import ideal
from .config import (
    ConfigError,
    PhysicalValueError,
    RunConfig,
    build_cavity,
    build_material,
    build_mirror,
    build_polarizability,
    config_hash,
    parse_config,
)
from .constants import HBAR_C
from .forces import (
    atom_force_far,
    atom_force_full,
    atom_force_nonretarded,
    force_split,
    medium_force_density,
    zs_atom_force,
)

EXIT_OK, EXIT_VALIDATION, EXIT_CONFIG, EXIT_NUMERICAL = 0, 1, 2, 3
MODES = ("slab-force", "ideal", "density", "atom-force", "zs-compare")
ZS_REGIME = {"full": "full", "nonretarded": "near", "far": "far"}


def _units(cfg, si: dict, coef: dict) -> dict:
    units = cfg.output.units
    out = {}
    if units in ("si", "both"):
        out.update(si)
    if units in ("coef", "both"):
        out.update(coef)
    return out


def _slab_point(cfg: RunConfig, var: str, x: float) -> dict:
    cavity = build_cavity(cfg)
    if var in ("d1", "d2"):
        cavity = dataclasses.replace(cavity, **{var: x})
    res = force_split(cavity, cfg.settings())
    si = {
        "total_Pa": res.total, "f1_Pa": res.f1, "f2_Pa": res.f2,
        "f1_p_Pa": res.parts[("f1", "p")], "f1_s_Pa": res.parts[("f1", "s")],
        "f2_p_Pa": res.parts[("f2", "p")], "f2_s_Pa": res.parts[("f2", "s")],
        "total_err_Pa": res.total_error, "f1_err_Pa": res.f1_error, "f2_err_Pa": res.f2_error,
    }
    coef = {"d_ref_m": res.d_ref, "C_total": res.C_total, "C_f1": res.C_f1, "C_f2": res.C_f2}
    return {**_units(cfg, si, coef), "converged": res.converged}


def _ideal_point(cfg: RunConfig, var: str, x: float) -> dict:
    i = cfg.ideal
    d1, d2 = (x, i.d2_m) if var == "d1" else (i.d1_m, x) if var == "d2" else (i.d1_m, i.d2_m)

    def side(fun, d, tag):
        return 0.0 if math.isinf(d) else fun(d, tag, i.eps0, i.mu0)

    f1 = side(ideal.ideal_f1, d2, i.tag2) - side(ideal.ideal_f1, d1, i.tag1)
    f2 = side(ideal.ideal_f2, d2, i.tag2) - side(ideal.ideal_f2, d1, i.tag1)
    total = ideal.ideal_cavity_total(d1, d2, i.tag1, i.tag2, i.eps0, i.mu0)
    d_ref = min(d1, d2)
    c = d_ref**4 / HBAR_C
    return {**_units(cfg, {"total_Pa": total, "f1_Pa": f1, "f2_Pa": f2},
                     {"d_ref_m": d_ref, "C_total": total * c, "C_f1": f1 * c, "C_f2": f2 * c}),
            "converged": True}


def _density_point(cfg: RunConfig, var: str, x: float) -> dict:
    d = cfg.density
    z = x if var == "z" else d.z_m
    other = build_mirror(d.other_mirror, cfg) if d.other_mirror is not None else None
    res = medium_force_density(z, build_mirror(d.mirror, cfg), build_material(d.medium, cfg),
                               cfg.settings(), other_mirror=other,
                               cavity_length=d.cavity_length_m)
    si = {"density_N_per_m3": res.value, "density_err_N_per_m3": res.error_estimate}
    coef = {"C_density": res.value * z**5 / HBAR_C}
    return {**_units(cfg, si, coef), "converged": res.converged}


def _atom_inputs(cfg: RunConfig, var: str, x: float):
    a = cfg.atom
    z = x if var == "z" else a.z_m
    return (z, build_mirror(a.mirror, cfg), build_material(a.medium, cfg),
            build_polarizability(a), cfg.settings())


def _this_work(regime, *args):
    fun = {"full": atom_force_full, "nonretarded": atom_force_nonretarded,
           "far": atom_force_far}[regime]
    return fun(*args)


def _atom_point(cfg: RunConfig, var: str, x: float) -> dict:
    res = _this_work(cfg.atom.regime, *_atom_inputs(cfg, var, x))
    return {**_units(cfg, {"force_N": res.value, "force_err_N": res.error},
                     {"C_atom": res.coefficient}),
            "regime": res.regime, "converged": res.converged}


def _zs_point(cfg: RunConfig, var: str, x: float) -> dict:
    args = _atom_inputs(cfg, var, x)
    ours = _this_work(cfg.atom.regime, *args)
    zs = zs_atom_force(*args, regime=ZS_REGIME[cfg.atom.regime])
    si = {"this_work_N": ours.value, "this_work_err_N": ours.error,
          "zs_N": zs.value, "zs_err_N": zs.error}
    coef = {"C_this_work": ours.coefficient, "C_zs": zs.coefficient}
    return {**_units(cfg, si, coef), "ratio": ours.value / zs.value,
            "regime": cfg.atom.regime, "converged": ours.converged and zs.converged}


_POINT = {"slab-force": _slab_point, "ideal": _ideal_point, "density": _density_point,
          "atom-force": _atom_point, "zs-compare": _zs_point}


def _default_variable(cfg: RunConfig) -> str:
    return "z" if cfg.mode in ("density", "atom-force", "zs-compare") else "d2"


def _current_value(cfg: RunConfig, var: str) -> float:
    section = {"slab-force": cfg.cavity, "ideal": cfg.ideal, "density": cfg.density,
               "atom-force": cfg.atom, "zs-compare": cfg.atom}[cfg.mode]
    return getattr(section, f"{var}_m")


def run_sweep(cfg: RunConfig, threads: int = 1) -> list[dict]:
    """One record per sweep point, in sweep order.

    A point that raises a numerical or physical error yields a row with an
    ``error`` message and ``converged = False``; the sweep continues.
    """
    if cfg.mode not in _POINT:
        raise ConfigError(f"mode {cfg.mode!r} does not produce a sweep")
    if cfg.sweep is not None:
        var, xs = cfg.sweep.variable, cfg.sweep.values()
    else:
        var = _default_variable(cfg)
        xs = np.array([_current_value(cfg, var)])
    point = _POINT[cfg.mode]

    def evaluate(x):
        row = {f"{var}_m": float(x)}
        try:
            row.update(point(cfg, var, float(x)))
            row["error"] = ""
        except (ArithmeticError, ValueError) as exc:
            row.update({"converged": False, "error": f"{type(exc).__name__}: {exc}"})
        return {k: _plain(v) for k, v in row.items()}

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(evaluate, xs))
    return [evaluate(x) for x in xs]


def _plain(v):
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    if isinstance(v, np.ndarray):
        return v.item() if v.size == 1 else v.tolist()
    return v


def _header(cfg: RunConfig) -> list[str]:
    return [
        f"mode: {cfg.mode}",
        f"config_sha256: {config_hash(cfg)}",
        f"rel_tol: {cfg.quadrature.rel_tol:g}; abs_tol: {cfg.quadrature.abs_tol:g}; "
        f"max_evaluations: {cfg.quadrature.max_evaluations}",
        "units: SI; per-area forces in Pa positive toward mirror 2; atom forces in N "
        "positive toward the mirror; C_* = f d_ref^4/(hbar c) per area, "
        "f z^5/(hbar c alpha0) per atom, f z^5/(hbar c) per volume",
    ]


def format_records(cfg: RunConfig, records: list[dict], fmt: Optional[str] = None) -> str:
    fmt = fmt or cfg.output.format
    if fmt == "json":
        meta = dict(line.split(": ", 1) for line in _header(cfg)[:2])
        meta.update(rel_tol=cfg.quadrature.rel_tol, abs_tol=cfg.quadrature.abs_tol,
                    units=cfg.output.units)
        return json.dumps({"meta": meta, "records": records}, indent=2) + "\n"
    buf = io.StringIO()
    for line in _header(cfg):
        buf.write(f"# {line}\n")
    fields = list(dict.fromkeys(k for r in records for k in r))
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for r in records:
        writer.writerow({k: repr(v) if isinstance(v, float) else v for k, v in r.items()})
    return buf.getvalue()


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="casimir", description="Lorentz-force Casimir forces in planar cavities")
    sub = parser.add_subparsers(dest="mode", required=True)
    for mode in MODES:
        p = sub.add_parser(mode)
        p.add_argument("--config", required=True, help="TOML run configuration")
        p.add_argument("--output", help="output file (default: stdout)")
        p.add_argument("--rel-tol", type=float)
        p.add_argument("--units", choices=("si", "coef", "both"))
        p.add_argument("--format", choices=("csv", "json"))
        p.add_argument("--threads", type=int, default=1)
    v = sub.add_parser("validate", help="run the built-in acceptance checks")
    v.add_argument("--rel-tol", type=float, default=1e-8)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.mode == "validate":
        from .validation import run_all

        results = run_all(rel_tol=args.rel_tol)
        n_failed = sum(not r.passed for r in results)
        print(f"{len(results) - n_failed}/{len(results)} checks passed")
        return EXIT_VALIDATION if n_failed else EXIT_OK

    try:
        with open(args.config) as fh:
            text = fh.read()
        cfg = parse_config(text)
        if cfg.mode != args.mode:
            raise ConfigError(f"config mode {cfg.mode!r} does not match command {args.mode!r}")
        updates = {}
        if args.rel_tol is not None:
            updates["quadrature"] = cfg.quadrature.model_copy(update={"rel_tol": args.rel_tol})
        out = {k: v for k, v in (("units", args.units), ("format", args.format),
                                 ("path", args.output)) if v is not None}
        if out:
            updates["output"] = cfg.output.model_copy(update=out)
        if updates:
            cfg = RunConfig.model_validate({**cfg.model_dump(), **{k: v.model_dump() for k, v in updates.items()}})
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ConfigError, PhysicalValueError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    records = run_sweep(cfg, threads=args.threads)
    text = format_records(cfg, records)
    if cfg.output.path:
        with open(cfg.output.path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    failed = any(r.get("error") or not r.get("converged", True) for r in records)
    return EXIT_NUMERICAL if failed else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
