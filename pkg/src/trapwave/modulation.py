"""Catalog of trap modulations defined canonically by their eigenfunction.

Sign convention used throughout the package: a profile is *defined* by
phi(t); the phase-front curvature is c = -(d/dt) ln phi and the trap
ratio is M = c' - c^2, so phi'' = -M phi.  Profiles additionally carry
the textbook potential ``V_paper`` used only when rendering trap
surfaces in the alternative convention M0 + V(t).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DomainError
from .numerics import ode_solve

__all__ = [
    "ModulationProfile",
    "make_constant",
    "make_oscillator_regular",
    "make_oscillator_rational",
    "make_scarf1_regular",
    "make_scarf1_rational",
    "make_numeric",
    "singular_times",
]

# Grid points closer than this to a zero of phi are rejected by consumers.
DEFAULT_EXCLUSION_RADIUS = 0.05


@dataclass(frozen=True)
class ModulationProfile:
    """A trap modulation: eigenfunction phi with derived c and M.

    ``c_closed`` / ``M_closed`` are present for the analytic catalog
    entries; numerically defined profiles fall back on the stored
    derivative ``dphi`` and the defining potential.
    """

    id: str
    params: dict
    phi: Callable
    dphi: Callable | None = None
    c_closed: Callable | None = None
    M_closed: Callable | None = None
    V_paper: Callable | None = None
    domain: tuple[float, float] = (-np.inf, np.inf)
    singular_times: tuple[float, ...] = field(default_factory=tuple)

    def c(self, t):
        """Phase-front curvature -(ln phi)'."""
        if self.c_closed is not None:
            return self.c_closed(t)
        return -self.dphi(t) / self.phi(t)

    def M(self, t):
        """Riccati-consistent trap-frequency ratio c' - c^2 = -phi''/phi."""
        if self.M_closed is not None:
            return self.M_closed(t)
        raise DomainError(f"profile {self.id!r} has no trap-ratio closed form")

    def M_paper_convention(self, t):
        """M0 + V_paper(t); display convention for trap surfaces only."""
        if self.V_paper is None:
            raise DomainError(f"profile {self.id!r} has no paper-form potential")
        m0 = float(self.params.get("M0", 0.0))
        return m0 + self.V_paper(t)

    def check_window(self, t0: float, t1: float,
                     exclusion: float = DEFAULT_EXCLUSION_RADIUS):
        """Raise if [t0, t1] leaves the domain or touches a singular time."""
        lo, hi = self.domain
        if t0 < lo or t1 > hi:
            raise DomainError(
                f"window [{t0!r}, {t1!r}] outside domain [{lo!r}, {hi!r}]")
        for ts in self.singular_times:
            if t0 - exclusion <= ts <= t1 + exclusion:
                from .errors import SingularWindowError
                raise SingularWindowError(ts)


def singular_times(profile: ModulationProfile,
                   window: tuple[float, float]) -> list[float]:
    """Zeros of phi inside the window, sorted ascending."""
    t0, t1 = window
    lo, hi = profile.domain
    if t0 < lo or t1 > hi:
        raise DomainError("window must lie inside the profile domain")
    return [t for t in profile.singular_times if t0 <= t <= t1]


def make_constant(M0: float, s: int = 1) -> ModulationProfile:
    """Unmodulated trap: phi = exp(-s sqrt(M0) t), constant curvature.

    s = +1 gives growing amplitude A(t) (the singular-soliton branch),
    s = -1 the decaying one; both solve the same linear equation.
    """
    if M0 < 0:
        raise DomainError(f"M0 must be nonnegative, got {M0!r}")
    if s not in (1, -1):
        raise DomainError(f"sign s must be +1 or -1, got {s!r}")
    root = np.sqrt(M0)
    rate = s * root

    def phi(t):
        return np.exp(-rate * np.asarray(t, dtype=float))

    return ModulationProfile(
        id="constant",
        params={"M0": float(M0), "s": s},
        phi=phi,
        dphi=lambda t: -rate * phi(t),
        c_closed=lambda t: np.full_like(np.asarray(t, dtype=float), rate),
        M_closed=lambda t: np.full_like(np.asarray(t, dtype=float), -M0),
        V_paper=lambda t: np.zeros_like(np.asarray(t, dtype=float)),
        domain=(-np.inf, np.inf),
    )


def make_oscillator_regular() -> ModulationProfile:
    """Gaussian eigenfunction: c = t, M = 1 - t^2."""

    norm = np.pi ** -0.25

    def phi(t):
        t = np.asarray(t, dtype=float)
        return norm * np.exp(-0.5 * t * t)

    return ModulationProfile(
        id="oscillator-regular",
        params={},
        phi=phi,
        dphi=lambda t: -np.asarray(t, dtype=float) * phi(t),
        c_closed=lambda t: np.asarray(t, dtype=float) + 0.0,
        M_closed=lambda t: 1.0 - np.asarray(t, dtype=float) ** 2,
        V_paper=lambda t: np.asarray(t, dtype=float) ** 2 - 1.0,
        domain=(-np.inf, np.inf),
    )


def make_oscillator_rational() -> ModulationProfile:
    """Rational extension of the Gaussian: extra 8t/(4t^2+2) term in c.

    The trap ratio follows from the Riccati identity applied to c (the
    textbook potential's constant term is kept separately in V_paper).
    """

    norm = np.sqrt(8.0 / np.sqrt(np.pi))

    def phi(t):
        t = np.asarray(t, dtype=float)
        return norm * np.exp(-0.5 * t * t) / (4.0 * t * t + 2.0)

    def dphi(t):
        t = np.asarray(t, dtype=float)
        return -(t + 8.0 * t / (4.0 * t * t + 2.0)) * phi(t)

    def c(t):
        t = np.asarray(t, dtype=float)
        return t + 8.0 * t / (4.0 * t * t + 2.0)

    def M(t):
        t = np.asarray(t, dtype=float)
        q = 2.0 * t * t + 1.0
        return -t * t - 3.0 - 8.0 * (2.0 * t * t - 1.0) / (q * q)

    def V_paper(t):
        t = np.asarray(t, dtype=float)
        d = 4.0 * t * t + 2.0
        return t * t + 16.0 * (4.0 * t * t - 2.0) / (d * d) - 2.0

    return ModulationProfile(
        id="oscillator-rational",
        params={},
        phi=phi, dphi=dphi, c_closed=c, M_closed=M, V_paper=V_paper,
        domain=(-np.inf, np.inf),
    )


def _scarf_check_params(alpha: float, beta: float):
    if not (alpha > 1.0):
        raise DomainError(f"alpha must exceed 1, got {alpha!r}")
    if not (0.0 < beta < alpha - 1.0):
        raise DomainError(
            f"beta must satisfy 0 < beta < alpha - 1, got beta={beta!r}, alpha={alpha!r}")


def _scarf_singularities(domain):
    """phi vanishes wherever sin t = +/-1, i.e. at pi/2 + k pi."""
    lo, hi = domain
    k0 = int(np.ceil((lo - np.pi / 2) / np.pi))
    out = []
    t = np.pi / 2 + k0 * np.pi
    while t <= hi:
        if t >= lo:
            out.append(t)
        t += np.pi
    return tuple(out)


def make_scarf1_regular(alpha: float, beta: float,
                        domain: tuple[float, float] = (-2 * np.pi, 2 * np.pi)
                        ) -> ModulationProfile:
    """Trigonometric modulation with c = alpha tan t - beta sec t."""
    _scarf_check_params(alpha, beta)
    a, b = float(alpha), float(beta)

    def phi(t):
        t = np.asarray(t, dtype=float)
        s = np.sin(t)
        # clip guards rounding where sin t crosses +/-1
        return (np.clip(1.0 - s, 0.0, None) ** ((a - b) / 2)
                * np.clip(1.0 + s, 0.0, None) ** ((a + b) / 2))

    def c(t):
        t = np.asarray(t, dtype=float)
        return a * np.tan(t) - b / np.cos(t)

    def M(t):
        t = np.asarray(t, dtype=float)
        sec = 1.0 / np.cos(t)
        return (a - b * b - a * a) * sec * sec + b * (2 * a - 1) * sec * np.tan(t) + a * a

    def V_paper(t):
        t = np.asarray(t, dtype=float)
        sec = 1.0 / np.cos(t)
        return (a * (a - 1) + b * b) * sec * sec - b * (2 * a - 1) * sec * np.tan(t)

    return ModulationProfile(
        id="scarf1-regular",
        params={"alpha": a, "beta": b},
        phi=phi,
        dphi=lambda t: -c(t) * phi(t),
        c_closed=c, M_closed=M, V_paper=V_paper,
        domain=domain,
        singular_times=_scarf_singularities(domain),
    )


def make_scarf1_rational(alpha: float, beta: float,
                         domain: tuple[float, float] = (-2 * np.pi, 2 * np.pi)
                         ) -> ModulationProfile:
    """Rational Scarf-I: the regular eigenfunction times a bounded rational
    factor (2a+1 - 2b sin t) / [(2a-1 - 2b sin t) 4b]; both denominators
    stay positive for beta < alpha - 1.
    """
    _scarf_check_params(alpha, beta)
    a, b = float(alpha), float(beta)
    reg = make_scarf1_regular(alpha, beta, domain)

    def d_minus(t):
        return 2 * a - 1.0 - 2 * b * np.sin(t)

    def d_plus(t):
        return 2 * a + 1.0 - 2 * b * np.sin(t)

    def phi(t):
        t = np.asarray(t, dtype=float)
        return reg.phi(t) * d_plus(t) / (d_minus(t) * 4.0 * b)

    def c(t):
        t = np.asarray(t, dtype=float)
        cos = np.cos(t)
        return (reg.c_closed(t)
                - 2 * b * cos / d_minus(t)
                + 2 * b * cos / d_plus(t))

    def dc(t):
        """Closed-form c'(t) for the Riccati identity."""
        t = np.asarray(t, dtype=float)
        sec = 1.0 / np.cos(t)
        cos = np.cos(t)
        sin = np.sin(t)
        base = a * sec * sec - b * sec * np.tan(t)
        dm, dp = d_minus(t), d_plus(t)
        # d/dt [2b cos / D] with dD/dt = -2b cos
        corr_m = 2 * b * (-sin * dm + 2 * b * cos * cos) / (dm * dm)
        corr_p = 2 * b * (-sin * dp + 2 * b * cos * cos) / (dp * dp)
        return base - corr_m + corr_p

    def M(t):
        ct = c(t)
        return dc(t) - ct * ct

    def V_paper(t):
        t = np.asarray(t, dtype=float)
        dm = d_minus(t)
        return (reg.V_paper(t)
                + 2.0 * (2 * a - 1) / dm
                - 2.0 * ((2 * a - 1) ** 2 - 4 * b * b) / (dm * dm))

    return ModulationProfile(
        id="scarf1-rational",
        params={"alpha": a, "beta": b},
        phi=phi,
        dphi=lambda t: -c(t) * phi(t),
        c_closed=c, M_closed=M, V_paper=V_paper,
        domain=domain,
        singular_times=_scarf_singularities(domain),
    )


def make_numeric(V: Callable, t0: float, phi0: float, dphi0: float,
                 domain: tuple[float, float], tol: float = 1e-10) -> ModulationProfile:
    """Profile from phi'' = V(t) phi integrated from initial data (M = -V).

    Zeros of phi inside the domain are located by sign-change bisection
    on the dense-output solution.
    """
    if phi0 == 0.0:
        raise DomainError("phi(t0) must be nonzero")
    lo, hi = domain
    if not (lo <= t0 <= hi):
        raise DomainError("t0 must lie inside the domain")

    def rhs(t, y):
        return np.array([y[1], V(t) * y[0]])

    y0 = np.array([phi0, dphi0])
    sols = []
    if hi > t0:
        sols.append(ode_solve(rhs, y0, t0, hi, tol=tol))
    if lo < t0:
        sols.append(ode_solve(rhs, y0, t0, lo, tol=tol))

    def eval_state(t):
        t_arr = np.asarray(t, dtype=float)
        flat = np.atleast_1d(t_arr).ravel()
        res = np.full(flat.shape + (2,), np.nan)
        for sol in sols:
            a, b = sorted(sol.t_span)
            mask = (flat >= a - 1e-12) & (flat <= b + 1e-12)
            if np.any(mask):
                res[mask] = np.atleast_2d(sol(flat[mask]))
        return res.reshape(t_arr.shape + (2,))

    def phi(t):
        return eval_state(t)[..., 0]

    def dphi(t):
        return eval_state(t)[..., 1]

    zeros = _zeros_by_bisection(lambda t: float(np.atleast_1d(phi(t))[0]), lo, hi)
    v_vec = np.vectorize(V, otypes=[float])

    return ModulationProfile(
        id="numeric",
        params={"t0": float(t0), "phi0": float(phi0), "dphi0": float(dphi0)},
        phi=phi, dphi=dphi,
        c_closed=None,
        M_closed=lambda t: -v_vec(np.asarray(t, dtype=float)),
        V_paper=None,
        domain=domain,
        singular_times=zeros,
    )


def _zeros_by_bisection(f, lo, hi, n_scan: int = 2000, tol: float = 1e-10):
    ts = np.linspace(lo, hi, n_scan + 1)
    vals = np.array([f(t) for t in ts])
    zeros = []
    for i in range(n_scan):
        va, vb = vals[i], vals[i + 1]
        if va == 0.0:
            zeros.append(float(ts[i]))
            continue
        if va * vb < 0.0:
            a, b = float(ts[i]), float(ts[i + 1])
            fa = va
            while b - a > tol:
                mid = 0.5 * (a + b)
                fm = f(mid)
                if fa * fm <= 0.0:
                    b = mid
                else:
                    a, fa = mid, fm
            zeros.append(0.5 * (a + b))
    if vals[-1] == 0.0:
        zeros.append(float(ts[-1]))
    return tuple(zeros)
