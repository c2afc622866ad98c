"""Control-parameter schedules derived from a modulation profile.

Given phi(t) and the physical constants, the full schedule follows from
ratios against the reference time t = 0:

    A(t) = A0 phi(0)/phi(t)      gamma(t) = gamma0 phi(0)/phi(t)
    ell(t) = ell0 phi(t)/phi(0)  a(t) = a0 + (lambda_ell/2) int_0^t A^2

The phase-rate coefficient lambda_ell is (2m - 1)/tau0^2, i.e. +1/tau0^2
for the bright soliton; the residual suite in :mod:`trapwave.gpe`
adjudicates this sign against the full equation of motion.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, SingularWindowError
from .modulation import DEFAULT_EXCLUSION_RADIUS, ModulationProfile
from .numerics import diff_central, ode_solve, quad_adaptive, validate_modulus

__all__ = [
    "PhysParams",
    "ControlTrajectory",
    "control_trajectory",
    "amplitude_quadrature_check",
    "center_of_mass_residual",
    "riccati_cross_check",
    "cumulative_quad",
]


@dataclass(frozen=True)
class PhysParams:
    """Soliton constants: amplitude, nonlinearity, center of mass, phase."""

    A0: float
    gamma0: float
    ell0: float = 0.0
    a0: float = 0.0
    m: float = 1.0

    def __post_init__(self):
        if not (self.A0 > 0.0):
            raise DomainError(f"A0 must be positive, got {self.A0!r}")
        if self.gamma0 == 0.0:
            raise DomainError("gamma0 must be nonzero")
        validate_modulus(self.m)

    @property
    def kappa(self) -> float:
        return -self.gamma0 / self.A0

    @property
    def tau0_sq(self) -> float:
        return -self.m * self.A0 / self.gamma0

    @property
    def tau0(self) -> float:
        t2 = self.tau0_sq
        if t2 <= 0.0:
            raise DomainError(
                f"soliton width undefined: tau0^2 = {t2!r} (need gamma0 < 0, m > 0)")
        return float(np.sqrt(t2))

    @property
    def lambda_ell(self) -> float:
        t2 = self.tau0_sq
        if t2 == 0.0:
            raise DomainError("lambda_ell undefined at m = 0 (tau0 = 0)")
        return (2.0 * self.m - 1.0) / t2


@dataclass(frozen=True)
class ControlTrajectory:
    """Sampled schedules t -> (phi, c, M, A, gamma, ell, a)."""

    t: np.ndarray
    phi: np.ndarray
    c: np.ndarray
    M: np.ndarray
    A: np.ndarray
    gamma: np.ndarray
    ell: np.ndarray
    a: np.ndarray
    phys: PhysParams = field(repr=False, default=None)

    COLUMNS = ("t", "phi", "c", "M", "A", "gamma", "ell", "a")

    def as_rows(self):
        return np.column_stack([getattr(self, name) for name in self.COLUMNS])


def _check_samples(profile: ModulationProfile, tgrid: np.ndarray,
                   exclusion: float):
    lo, hi = profile.domain
    if tgrid[0] < lo or tgrid[-1] > hi:
        raise DomainError(
            f"samples [{tgrid[0]!r}, {tgrid[-1]!r}] leave the profile domain")
    for ts in profile.singular_times:
        hit = np.abs(tgrid - ts) < exclusion
        if np.any(hit):
            raise SingularWindowError(
                float(tgrid[hit][0]),
                f"sample t = {float(tgrid[hit][0])!r} lies within {exclusion!r} "
                f"of singular time {ts!r}")


def cumulative_quad(f, tgrid: np.ndarray, t_ref: float,
                    tol: float = 1e-12) -> np.ndarray:
    """int_{t_ref}^{t_i} f for every grid point, by interval-wise quadrature.

    The per-interval tolerance is scaled by the running magnitude so
    steep integrands (Scarf kicks) do not stall the subdivision.
    """
    knots = np.unique(np.concatenate([tgrid, [t_ref]]))
    incr = np.zeros(len(knots))
    for i in range(len(knots) - 1):
        a, b = knots[i], knots[i + 1]
        est = abs((b - a) * 0.5 * (f(a) + f(b)))
        incr[i + 1] = quad_adaptive(f, a, b, tol=tol * max(1.0, est),
                                    rel_floor=1e-13)
    cum = np.cumsum(incr)
    iref = int(np.searchsorted(knots, t_ref))
    cum -= cum[iref]
    idx = np.searchsorted(knots, tgrid)
    return cum[idx]


def control_trajectory(profile: ModulationProfile, phys: PhysParams,
                       tgrid, t_ref: float = 0.0,
                       exclusion: float = DEFAULT_EXCLUSION_RADIUS,
                       quad_tol: float = 1e-12) -> ControlTrajectory:
    """Full schedule on a sorted grid; reference time must lie in its span."""
    tgrid = np.asarray(tgrid, dtype=float)
    if tgrid.ndim != 1 or len(tgrid) < 1 or np.any(np.diff(tgrid) <= 0):
        raise DomainError("tgrid must be sorted and strictly increasing")
    if not (tgrid[0] <= t_ref <= tgrid[-1]):
        raise DomainError(
            f"reference time {t_ref!r} outside the grid span "
            f"[{tgrid[0]!r}, {tgrid[-1]!r}]")
    _check_samples(profile, tgrid, exclusion)

    phi0 = float(profile.phi(0.0))
    phi_t = np.asarray(profile.phi(tgrid), dtype=float)
    ratio = phi0 / phi_t
    A = phys.A0 * ratio
    gamma = phys.gamma0 * ratio
    ell = phys.ell0 / ratio
    c = np.asarray(profile.c(tgrid), dtype=float)
    M = np.asarray(profile.M(tgrid), dtype=float)

    def a_squared(t):
        return (phys.A0 * phi0 / float(profile.phi(t))) ** 2

    integral = cumulative_quad(a_squared, tgrid, t_ref, tol=quad_tol)
    a = phys.a0 + 0.5 * phys.lambda_ell * integral

    return ControlTrajectory(t=tgrid, phi=phi_t, c=c, M=M, A=A,
                             gamma=gamma, ell=ell, a=a, phys=phys)


def amplitude_quadrature_check(profile: ModulationProfile, phys: PhysParams,
                               tgrid, exclusion: float = DEFAULT_EXCLUSION_RADIUS,
                               quad_tol: float = 1e-12) -> float:
    """Max relative gap between A0 exp(int c) and the phi-ratio amplitude."""
    tgrid = np.asarray(tgrid, dtype=float)
    _check_samples(profile, tgrid, exclusion)
    if not (tgrid[0] <= 0.0 <= tgrid[-1]):
        raise DomainError("grid span must contain the reference time 0")
    phi0 = float(profile.phi(0.0))

    def c_scalar(t):
        return float(profile.c(t))

    integral = cumulative_quad(c_scalar, tgrid, 0.0, tol=quad_tol)
    a_quad = phys.A0 * np.exp(integral)
    a_ratio = phys.A0 * phi0 / np.asarray(profile.phi(tgrid), dtype=float)
    return float(np.max(np.abs(a_quad - a_ratio) / np.abs(a_ratio)))


def center_of_mass_residual(traj: ControlTrajectory) -> float:
    """Max |d ell/dt + c ell| over interior samples (5-point stencil)."""
    t, ell, c = traj.t, traj.ell, traj.c
    if len(t) < 5:
        raise DomainError("need at least 5 samples for the stencil")
    h = t[1] - t[0]
    if np.max(np.abs(np.diff(t) - h)) > 1e-9 * abs(h):
        raise DomainError("stencil differentiation needs uniform spacing")
    dl = (-ell[4:] + 8 * ell[3:-1] - 8 * ell[1:-3] + ell[:-4]) / (12.0 * h)
    return float(np.max(np.abs(dl + c[2:-2] * ell[2:-2])))


def riccati_cross_check(profile: ModulationProfile, t0: float, t1: float,
                        n_samples: int = 201, tol: float = 1e-10) -> float:
    """Integrate c' = c^2 + M from the closed form at t0; max deviation."""
    profile.check_window(min(t0, t1), max(t0, t1))

    def rhs(t, y):
        return np.array([y[0] ** 2 + float(profile.M(t))])

    c0 = float(profile.c(t0))
    sol = ode_solve(rhs, [c0], t0, t1, tol=tol)
    ts = np.linspace(t0, t1, n_samples)
    c_num = sol(ts)[:, 0]
    c_ref = np.asarray(profile.c(ts), dtype=float)
    return float(np.max(np.abs(c_num - c_ref)))
