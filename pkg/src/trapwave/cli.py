"""Command-line front end: scenario catalog, CSV emission, validation.

Subcommands: catalog, trajectory, field, validate, evolve.
Exit codes: 0 success, 1 config error, 2 validation failure,
3 singularity inside the requested window.

All CSV/JSON files are written atomically (temp + rename) into the
directory given by --out.  Windows crossing singular times of the
modulation are clipped by default: samples inside the exclusion radius
of a zero of phi, or where the amplitude ratio exceeds AMPLITUDE_CAP,
are dropped and the remaining pieces get piecewise phase references.
Pass --no-clip to fail (exit 3) instead.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

import numpy as np

from .consistency import ControlTrajectory, control_trajectory
from .errors import ConfigError, SingularWindowError, TrapwaveError
from .gpe import compare_fields, norm, split_step_evolve
from .modulation import DEFAULT_EXCLUSION_RADIUS
from .scenarios import (REGISTRY, ScenarioConfig, dump_config, figure_names,
                        get_scenario, load_config, registry_names)
from .soliton import field_from_schedule, sample_field
from .validation import report_dict, run_all, scenario_checks

__all__ = ["main", "AMPLITUDE_CAP", "MAX_Z_COLUMNS"]

# samples where A(t)/A0 exceeds this are clipped (physical kicks, not failures)
AMPLITUDE_CAP = 20.0
# z decimation bound for surface CSVs; full resolution is never needed there
MAX_Z_COLUMNS = 256

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_VALIDATION = 2
EXIT_SINGULAR = 3


def _atomic_write(path: str, text: str):
    d = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=".part")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _csv(header: str, rows) -> str:
    lines = [header]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def _load_scenario(args) -> ScenarioConfig:
    if getattr(args, "config", None):
        with open(args.config) as fh:
            cfg = load_config(fh.read())
    elif getattr(args, "scenario", None):
        cfg = get_scenario(args.scenario)
    else:
        raise ConfigError("need --scenario <name> or --config <path>")
    if getattr(args, "convention", None):
        from dataclasses import replace
        cfg = replace(cfg, trap_convention=args.convention)
    return cfg


def _clipped_pieces(cfg: ScenarioConfig, clip: bool,
                    exclusion: float = DEFAULT_EXCLUSION_RADIUS):
    """Retained sample times, split into pieces at singular times.

    Returns a list of (times, t_ref) with t_ref usable as the phase
    quadrature anchor inside that piece.
    """
    profile = cfg.profile()
    ts = cfg.time_samples()
    sing = [s for s in profile.singular_times
            if cfg.t0 - exclusion <= s <= cfg.t1 + exclusion]
    if sing and not clip:
        raise SingularWindowError(sing[0])
    keep = np.ones(len(ts), dtype=bool)
    for s in sing:
        keep &= np.abs(ts - s) >= exclusion
    phi0 = float(profile.phi(0.0))
    ratio = phi0 / np.asarray(profile.phi(ts[keep]), dtype=float)
    sub = np.abs(ratio) <= AMPLITUDE_CAP
    kept = ts[keep][sub]
    if len(kept) == 0:
        raise SingularWindowError(
            sing[0] if sing else cfg.t0,
            "no samples survive clipping; shrink the window")
    edges = [cfg.t0 - 1.0] + sing + [cfg.t1 + 1.0]
    pieces = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        chunk = kept[(kept > lo) & (kept < hi)]
        if len(chunk) == 0:
            continue
        t_ref = 0.0 if chunk[0] <= 0.0 <= chunk[-1] else float(chunk[0])
        pieces.append((chunk, t_ref))
    return pieces


def _piecewise_trajectory(cfg: ScenarioConfig, clip: bool) -> ControlTrajectory:
    profile, phys = cfg.profile(), cfg.phys()
    parts = [control_trajectory(profile, phys, chunk, t_ref=t_ref)
             for chunk, t_ref in _clipped_pieces(cfg, clip)]
    cat = {name: np.concatenate([getattr(p, name) for p in parts])
           for name in ControlTrajectory.COLUMNS}
    return ControlTrajectory(phys=phys, **cat)


def _decimated_z(cfg: ScenarioConfig) -> np.ndarray:
    z = cfg.grid().z
    stride = max(1, int(np.ceil(len(z) / MAX_Z_COLUMNS)))
    return z[::stride]


def cmd_catalog(args) -> int:
    if getattr(args, "scenario", None):
        sys.stdout.write(dump_config(get_scenario(args.scenario)))
        return EXIT_OK
    out = ["modulation ids:"]
    out.append("  constant             params: M0 >= 0, s in {+1, -1}")
    out.append("  oscillator-regular   params: none")
    out.append("  oscillator-rational  params: none")
    out.append("  scarf1-regular       params: alpha > 1, 0 < beta < alpha - 1")
    out.append("  scarf1-rational      params: alpha > 1, 0 < beta < alpha - 1")
    out.append("")
    out.append("registered scenarios:")
    for name in registry_names():
        cfg = REGISTRY[name]
        bits = [f"modulation={cfg.modulation_id}"]
        if cfg.modulation_id == "constant":
            bits.append(f"M0={cfg.M0:g}")
        if cfg.alpha:
            bits.append(f"alpha={cfg.alpha:g} beta={cfg.beta:g}")
        bits.append(f"A0={cfg.A0:g} gamma0={cfg.gamma0:g} ell0={cfg.ell0:g}")
        bits.append(f"t=[{cfg.t0:g},{cfg.t1:g}]")
        bits.append(f"outputs={'+'.join(cfg.outputs)}")
        tag = "figure" if cfg.is_figure else "oracle"
        out.append(f"  {name:24s} [{tag}] " + " ".join(bits))
    sys.stdout.write("\n".join(out) + "\n")
    return EXIT_OK


def _write_trap(cfg: ScenarioConfig, traj: ControlTrajectory, out_dir: str):
    profile = cfg.profile()
    z = _decimated_z(cfg)
    if cfg.trap_convention == "paper":
        m_used = np.asarray(profile.M_paper_convention(traj.t), dtype=float)
    else:
        m_used = traj.M
    rows = []
    for ti, mi in zip(traj.t, m_used):
        v = 0.5 * mi * z * z
        rows.extend((ti, zj, vj) for zj, vj in zip(z, v))
    _atomic_write(os.path.join(out_dir, f"{cfg.name}-trap.csv"),
                  _csv("t,z,vtrap", rows))


def cmd_trajectory(args) -> int:
    cfg = _load_scenario(args)
    traj = _piecewise_trajectory(cfg, clip=not args.no_clip)
    _atomic_write(os.path.join(args.out, f"{cfg.name}-trajectory.csv"),
                  _csv(",".join(ControlTrajectory.COLUMNS), traj.as_rows()))
    if "trap" in cfg.outputs or cfg.trap_convention == "paper":
        _write_trap(cfg, traj, args.out)
    return EXIT_OK


def cmd_field(args) -> int:
    cfg = _load_scenario(args)
    if abs(cfg.m - 1.0) > 1e-12:
        raise ConfigError("field emission requires the bright case m = 1")
    phys = cfg.phys()
    z = _decimated_z(cfg)
    rows = []
    for chunk, t_ref in _clipped_pieces(cfg, clip=not args.no_clip):
        traj = control_trajectory(cfg.profile(), phys, chunk, t_ref=t_ref)
        for i, ti in enumerate(traj.t):
            psi = field_from_schedule(phys, traj.A[i], traj.ell[i],
                                      traj.c[i], traj.a[i], z)
            rows.extend(
                (ti, zj, p.real, p.imag, abs(p) ** 2) for zj, p in zip(z, psi))
    _atomic_write(os.path.join(args.out, f"{cfg.name}-field.csv"),
                  _csv("t,z,re,im,density", rows))
    return EXIT_OK


def cmd_evolve(args) -> int:
    cfg = _load_scenario(args)
    profile, phys, grid = cfg.profile(), cfg.phys(), cfg.grid()
    t_samples = [t for t in cfg.time_samples() if t <= cfg.evolve_t1 + 1e-12]
    field = sample_field(phys, profile, grid, cfg.t0)
    rows = []
    linf = 0.0
    for ti in t_samples:
        if ti > field.t:
            field = split_step_evolve(field, phys, profile, ti, cfg.dt)
        analytic = sample_field(phys, profile, grid, ti)
        linf, l2 = compare_fields(field, analytic)
        rows.append((ti, linf, l2, norm(field), norm(analytic)))
    _atomic_write(os.path.join(args.out, f"{cfg.name}-comparison.csv"),
                  _csv("t,linf,l2,norm_numeric,norm_analytic", rows))
    if linf > cfg.evolve_linf_bound:
        sys.stderr.write(
            f"final linf {linf:.3e} exceeds bound {cfg.evolve_linf_bound:.3e}\n")
        return EXIT_VALIDATION
    return EXIT_OK


def cmd_validate(args) -> int:
    if args.all or not (getattr(args, "scenario", None)
                        or getattr(args, "config", None)):
        results = run_all()
        name = "validation"
    else:
        cfg = _load_scenario(args)
        results = scenario_checks(cfg.name)
        name = f"{cfg.name}-validation"
    report = report_dict(results)
    text = json.dumps(report, indent=2) + "\n"
    if args.out:
        _atomic_write(os.path.join(args.out, f"{name}.json"), text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if report["all_pass"] else EXIT_VALIDATION


def _add_common(p, out_required: bool = True):
    p.add_argument("--scenario", help="registered scenario name")
    p.add_argument("--config", help="path to an INI scenario config")
    p.add_argument("--convention", choices=("riccati", "paper"),
                   help="override the trap convention")
    p.add_argument("--out", required=out_required,
                   help="output directory for CSV/JSON artifacts")
    p.add_argument("--no-clip", action="store_true",
                   help="fail instead of clipping singular windows")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="trapwave",
        description="Nonautonomous bright-soliton schedules, fields and checks")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", help="list modulations and scenarios")
    p.add_argument("--scenario", help="print this scenario's config instead")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("trajectory", help="emit the control-schedule CSV")
    _add_common(p)
    p.set_defaults(func=cmd_trajectory)

    p = sub.add_parser("field", help="emit the density-surface CSV")
    _add_common(p)
    p.set_defaults(func=cmd_field)

    p = sub.add_parser("validate", help="run validation checks, emit JSON")
    p.add_argument("--all", action="store_true", help="run the full suite")
    p.add_argument("--scenario", help="check a single registered scenario")
    p.add_argument("--config", help="path to an INI scenario config")
    p.add_argument("--out", help="directory for the JSON report (else stdout)")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("evolve", help="split-step vs analytic comparison CSV")
    _add_common(p)
    p.set_defaults(func=cmd_evolve)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out_dir = getattr(args, "out", None)
    try:
        if out_dir:
            os.makedirs(out_dir, exist_ok=True)
        return args.func(args)
    except SingularWindowError as exc:
        sys.stderr.write(f"singular time at t = {exc.t:.7f} "
                         "inside the requested window\n")
        return EXIT_SINGULAR
    except FileNotFoundError as exc:
        sys.stderr.write(f"config error: {exc}\n")
        return EXIT_CONFIG
    except TrapwaveError as exc:
        sys.stderr.write(f"config error: {exc}\n")
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
