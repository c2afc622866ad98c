"""Machine-checkable validation suite.

Every check returns a measured value, its threshold and the comparison
direction, so the CLI can emit a uniform JSON report.  The suite covers
the closed-form/Cole-Hopf identities, the Riccati cross-checks, the
elliptic equation, the full-equation residual adjudication (including
the two deliberately broken variants, whose residuals must be *large*),
the split-step oracle comparison and the per-scenario field invariants.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from .consistency import (PhysParams, amplitude_quadrature_check,
                          center_of_mass_residual, control_trajectory,
                          riccati_cross_check)
from .gpe import (Grid1D, compare_fields, convergence_order, norm,
                  split_step_evolve)
from .modulation import (DEFAULT_EXCLUSION_RADIUS, ModulationProfile,
                         singular_times)
from .scenarios import REGISTRY, get_scenario
from .soliton import bright_psi, elliptic_residual, sample_field, schedule_at

__all__ = ["CheckResult", "run_all", "scenario_checks", "report_dict"]


@dataclass
class CheckResult:
    check: str
    value: float
    threshold: float
    passed: bool
    op: str = "<="


def _check(name: str, value: float, threshold: float, op: str = "<=") -> CheckResult:
    value = float(value)
    ok = value <= threshold if op == "<=" else value >= threshold
    return CheckResult(check=name, value=value, threshold=threshold,
                       passed=bool(ok), op=op)


def report_dict(results: list[CheckResult]) -> dict:
    checks = []
    for r in results:
        d = asdict(r)
        d["pass"] = d.pop("passed")
        checks.append(d)
    return {
        "checks": checks,
        "passed": sum(r.passed for r in results),
        "failed": sum(not r.passed for r in results),
        "all_pass": all(r.passed for r in results),
    }


_PHYS = PhysParams(A0=0.5, gamma0=-0.5)

# catalog profiles with their closed-form test windows
def _catalog():
    return [
        ("constant", get_scenario("fig-unmod-0.01").profile(), (0.0, 10.0)),
        ("oscillator-regular", get_scenario("fig-reg-osc-short").profile(), (0.0, 2.0)),
        ("oscillator-rational", get_scenario("fig-rat-osc-short").profile(), (0.0, 2.0)),
        ("scarf1-regular", get_scenario("fig-scarf-reg-short").profile(), (-1.2, 1.2)),
        ("scarf1-rational", get_scenario("fig-scarf-rat-short").profile(), (-1.2, 1.2)),
    ]


def _stencil(f, t: np.ndarray, h: float) -> np.ndarray:
    return (-f(t + 2 * h) + 8 * f(t + h) - 8 * f(t - h) + f(t - 2 * h)) / (12.0 * h)


def checks_cole_hopf() -> list[CheckResult]:
    """max |c + phi'/phi| / (1 + |c|) on 1000-point grids."""
    out = []
    for name, profile, (t0, t1) in _catalog():
        t = np.linspace(t0, t1, 1000)
        dphi = _stencil(profile.phi, t, 1e-5)
        c = np.asarray(profile.c(t), dtype=float)
        dev = np.abs(c + dphi / np.asarray(profile.phi(t), dtype=float)) / (1.0 + np.abs(c))
        out.append(_check(f"cole-hopf-{name}", np.max(dev), 1e-6))
    return out


def checks_riccati_identity() -> list[CheckResult]:
    out = []
    for name, profile, (t0, t1) in _catalog():
        t = np.linspace(t0, t1, 1000)
        dc = _stencil(profile.c, t, 1e-5)
        c = np.asarray(profile.c(t), dtype=float)
        m = np.asarray(profile.M(t), dtype=float)
        out.append(_check(f"riccati-identity-{name}",
                          np.max(np.abs(dc - c * c - m)), 1e-6))
    return out


def checks_riccati_ode() -> list[CheckResult]:
    cases = [
        ("oscillator-regular", (0.0, 2.0), 1e-7),
        ("oscillator-rational", (0.0, 1.5), 1e-6),
        ("constant", (0.0, 10.0), 1e-9),
    ]
    by_name = {n: p for n, p, _ in _catalog()}
    out = []
    for name, (t0, t1), thr in cases:
        dev = riccati_cross_check(by_name[name], t0, t1)
        out.append(_check(f"riccati-ode-{name}", dev, thr))
    return out


def checks_amplitude_equivalence() -> list[CheckResult]:
    out = []
    for name, profile, (t0, t1) in _catalog():
        t = np.linspace(t0, t1, 101)
        dev = amplitude_quadrature_check(profile, _PHYS, t)
        out.append(_check(f"amplitude-equivalence-{name}", dev, 1e-7))
    return out


def checks_center_of_mass() -> list[CheckResult]:
    out = []
    for name, profile, (t0, t1) in _catalog():
        worst = 0.0
        for ell0 in (-4.0, 0.0, 1.0):
            phys = PhysParams(A0=0.5, gamma0=-0.5, ell0=ell0)
            t = np.linspace(t0, t1, 2001)
            traj = control_trajectory(profile, phys, t, quad_tol=1e-10)
            worst = max(worst, center_of_mass_residual(traj))
        out.append(_check(f"center-of-mass-{name}", worst, 1e-6))
    return out


def checks_elliptic() -> list[CheckResult]:
    out = []
    h = 1e-3
    grid = np.arange(-10.0, 10.0 + h / 2, h)
    out.append(_check("elliptic-sech", elliptic_residual(_PHYS, grid), 1e-9))
    # near-degenerate modulus agrees with sech
    t = np.linspace(-5.0, 5.0, 2001)
    from .numerics import jacobi_cn
    phys_near = PhysParams(A0=0.5, gamma0=-0.5, m=1.0 - 1e-10)
    cn_vals = jacobi_cn(t / phys_near.tau0, phys_near.m)
    out.append(_check("elliptic-cn-to-sech",
                      np.max(np.abs(cn_vals - 1.0 / np.cosh(t / phys_near.tau0))),
                      1e-5))
    # coarser stencil for the cn cases: balances truncation against the
    # ~1e-15 evaluation noise amplified by 1/h^2
    h5 = 3e-3
    grid5 = np.arange(-5.0, 5.0 + h5 / 2, h5)
    for m in (0.25, 0.5, 0.75):
        phys_m = PhysParams(A0=0.5, gamma0=-0.5, m=m)
        out.append(_check(f"elliptic-cn-m{m}",
                          elliptic_residual(phys_m, grid5), 1e-9))
    return out


_RESIDUAL_TIMES = (0.3, 0.7, 1.1, 1.5)


def _residual_configs():
    reg = get_scenario("fig-reg-osc-short").profile()
    rat = get_scenario("fig-rat-osc-short").profile()
    grid_on = Grid1D(-48.0, 48.0, 4096)
    grid_off = Grid1D(-52.0, 44.0, 4096)
    return [
        ("reg-osc-ell0", reg, PhysParams(0.5, -0.5, 0.0), grid_on),
        ("rat-osc-ell0", rat, PhysParams(0.5, -0.5, 0.0), grid_on),
        ("reg-osc-ell-4", reg, PhysParams(0.5, -0.5, -4.0), grid_off),
        ("rat-osc-ell-4", rat, PhysParams(0.5, -0.5, -4.0), grid_off),
    ]


def checks_gpe_residual() -> list[CheckResult]:
    from .gpe import gpe_residual

    out = []
    for name, profile, phys, grid in _residual_configs():
        correct = max(gpe_residual(phys, profile, grid, t)
                      for t in _RESIDUAL_TIMES)
        out.append(_check(f"gpe-residual-{name}", correct, 1e-5))
        flipped = min(gpe_residual(phys, profile, grid, t,
                                   lambda_ell=-phys.lambda_ell)
                      for t in _RESIDUAL_TIMES)
        out.append(_check(f"gpe-residual-{name}-flipped-lambda", flipped,
                          1e-1, op=">="))
        paper = min(gpe_residual(phys, profile, grid, t, trap="paper")
                    for t in _RESIDUAL_TIMES)
        out.append(_check(f"gpe-residual-{name}-paper-trap", paper,
                          1e-1, op=">="))
    return out


def checks_evolution() -> list[CheckResult]:
    out = []
    for name in ("evolve-free", "evolve-reg-osc", "evolve-rat-osc"):
        cfg = get_scenario(name)
        profile, phys, grid = cfg.profile(), cfg.phys(), cfg.grid()
        field0 = sample_field(phys, profile, grid, cfg.t0)
        evolved = split_step_evolve(field0, phys, profile, cfg.evolve_t1, cfg.dt)
        analytic = sample_field(phys, profile, grid, cfg.evolve_t1)
        linf, _ = compare_fields(evolved, analytic)
        out.append(_check(f"{name}-linf", linf, cfg.evolve_linf_bound))
        drift = abs(norm(evolved) - norm(field0)) / norm(field0)
        out.append(_check(f"{name}-norm-drift", drift, 1e-10))
    cfg = get_scenario("evolve-reg-osc")
    order = convergence_order(cfg.phys(), cfg.profile(), cfg.grid(),
                              cfg.t0, cfg.evolve_t1, [4e-4, 2e-4, 1e-4])
    out.append(_check("evolve-convergence-order-low", order, 1.9, op=">="))
    out.append(_check("evolve-convergence-order-high", order, 2.1))
    return out


def checks_compression() -> list[CheckResult]:
    reg = get_scenario("fig-reg-osc-short").profile()
    rat = get_scenario("fig-rat-osc-short").profile()
    t = np.linspace(0.0, 2.0, 401)
    a_reg = 0.5 * float(reg.phi(0.0)) / np.asarray(reg.phi(t), dtype=float)
    a_rat = 0.5 * float(rat.phi(0.0)) / np.asarray(rat.phi(t), dtype=float)
    ratio = a_rat / a_reg
    dev = np.max(np.abs(ratio - (2.0 * t * t + 1.0)))
    out = [_check("compression-ratio-identity", dev, 1e-10)]
    increasing = np.min(np.diff(ratio)) > 0.0
    out.append(_check("compression-ratio-monotone", 1.0 if increasing else 0.0,
                      1.0, op=">="))
    return out


def checks_scarf_structure() -> list[CheckResult]:
    reg = get_scenario("fig-scarf-reg-short").profile()
    rat = get_scenario("fig-scarf-rat-short").profile()
    a, b = reg.params["alpha"], reg.params["beta"]
    out = []
    t = np.linspace(-1.2, 1.2, 501)
    for name, p in (("reg", reg), ("rat", rat)):
        per = np.max(np.abs(np.asarray(p.M(t + 2 * np.pi)) - np.asarray(p.M(t))))
        out.append(_check(f"scarf-{name}-periodicity", per, 1e-9))
    found = singular_times(reg, (0.0, 2 * np.pi))
    expected = [np.pi / 2, 3 * np.pi / 2]
    if len(found) == len(expected):
        dev = max(abs(f - e) for f, e in zip(found, expected))
    else:
        dev = np.inf
    out.append(_check("scarf-singular-times", dev, 1e-8))
    # rational c differs from regular c by exactly the two correction terms
    cos = np.cos(t)
    sin = np.sin(t)
    corr = (-2 * b * cos / (2 * a - 1 - 2 * b * sin)
            + 2 * b * cos / (2 * a + 1 - 2 * b * sin))
    dev = np.max(np.abs(np.asarray(rat.c(t)) - np.asarray(reg.c(t)) - corr))
    out.append(_check("scarf-correction-identity", dev, 1e-10))
    # long-time trap convergence of the two oscillator modulations
    reg_osc = get_scenario("fig-reg-osc-short").profile()
    rat_osc = get_scenario("fig-rat-osc-short").profile()
    ratio = float(rat_osc.M(20.0)) / float(reg_osc.M(20.0))
    out.append(_check("osc-trap-convergence", abs(ratio - 1.0), 0.011))
    return out


def _piece_reference(profile: ModulationProfile, t: float,
                     exclusion: float = DEFAULT_EXCLUSION_RADIUS) -> float:
    """Phase-quadrature anchor: 0 unless a singular time separates t from 0."""
    between = [s for s in profile.singular_times
               if min(0.0, t) < s < max(0.0, t)]
    if not between:
        return 0.0
    if t > 0:
        return max(between) + exclusion
    return min(between) - exclusion


def scenario_checks(name: str) -> list[CheckResult]:
    """Field invariants (norm, peak, phase front) for one registered scenario."""
    cfg = get_scenario(name)
    if not cfg.check_times:
        return []
    profile, phys, grid = cfg.profile(), cfg.phys(), cfg.grid()
    tau0 = phys.tau0
    out = []
    worst_norm = worst_peakval = worst_peakloc = worst_phase = 0.0
    for t in cfg.check_times:
        t_ref = _piece_reference(profile, t)
        field = sample_field(phys, profile, grid, t, t_ref=t_ref)
        worst_norm = max(worst_norm, abs(norm(field) - 2.0 * tau0) / (2.0 * tau0))
        A, _, ell, c, _ = schedule_at(phys, profile, t, t_ref=t_ref)
        peak = float(np.abs(bright_psi(phys, profile, np.array([ell]), t,
                                       t_ref=t_ref))[0] ** 2)
        worst_peakval = max(worst_peakval, abs(peak - A) / A)
        zpk = float(grid.z[int(np.argmax(field.density()))])
        worst_peakloc = max(worst_peakloc, abs(zpk - ell) / grid.dz)
        mask = np.abs(grid.z) <= 2.0
        z = grid.z[mask]
        flattened = field.values[mask] * np.exp(1j * 0.5 * c * z * z)
        rel = flattened / flattened[np.argmin(np.abs(z))]
        worst_phase = max(worst_phase, float(np.max(np.abs(np.angle(rel)))))
    out.append(_check(f"{name}-norm", worst_norm, 1e-8))
    out.append(_check(f"{name}-peak-value", worst_peakval, 1e-9))
    out.append(_check(f"{name}-peak-location", worst_peakloc, 1.0))
    out.append(_check(f"{name}-phase-curvature", worst_phase, 1e-9))
    return out


def checks_field_invariants() -> list[CheckResult]:
    out = []
    for name in sorted(REGISTRY):
        out.extend(scenario_checks(name))
    return out


_GROUPS = [
    checks_cole_hopf,
    checks_riccati_identity,
    checks_riccati_ode,
    checks_amplitude_equivalence,
    checks_center_of_mass,
    checks_elliptic,
    checks_gpe_residual,
    checks_evolution,
    checks_compression,
    checks_scarf_structure,
    checks_field_invariants,
]


def run_all(max_workers: int | None = None) -> list[CheckResult]:
    """Run every validation group; thread count from TRAPWAVE_THREADS."""
    if max_workers is None:
        max_workers = int(os.environ.get("TRAPWAVE_THREADS", "1"))
    if max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            groups = list(pool.map(lambda g: g(), _GROUPS))
    else:
        groups = [g() for g in _GROUPS]
    return [r for group in groups for r in group]
