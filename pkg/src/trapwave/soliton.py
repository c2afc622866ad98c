"""Analytic nonautonomous fields: bright (sech) soliton and cn family.

The field is assembled from the control schedules of
:mod:`trapwave.consistency`:

    psi(z, t) = sqrt(A) F(A (z - ell) / tau0) exp(i [a - c z^2 / 2])

with F = sech for modulus m = 1 and F = cn(. , m) otherwise.
"""

from __future__ import annotations

import numpy as np

from .consistency import PhysParams, _check_samples, cumulative_quad
from .errors import DomainError
from .modulation import DEFAULT_EXCLUSION_RADIUS, ModulationProfile
from .numerics import jacobi_cn, validate_modulus

__all__ = [
    "bright_psi",
    "cnoidal_F",
    "elliptic_residual",
    "field_from_schedule",
    "sample_field",
    "schedule_at",
]

_M_ONE_BAND = 1e-12


def schedule_at(phys: PhysParams, profile: ModulationProfile, t: float,
                t_ref: float = 0.0, lambda_ell: float | None = None,
                exclusion: float = DEFAULT_EXCLUSION_RADIUS):
    """(A, gamma, ell, c, a) at a single time.

    ``lambda_ell`` overrides the phase-rate coefficient; the sign
    adjudication tests use it to build the deliberately wrong field.
    """
    lam = phys.lambda_ell if lambda_ell is None else float(lambda_ell)
    tgrid = np.unique([min(t_ref, t), max(t_ref, t)])
    _check_samples(profile, tgrid, exclusion)
    phi0 = float(profile.phi(0.0))
    ratio = phi0 / float(profile.phi(t))
    A = phys.A0 * ratio
    gamma = phys.gamma0 * ratio
    ell = phys.ell0 / ratio
    c = float(profile.c(t))

    def a_squared(tp):
        return (phys.A0 * phi0 / float(profile.phi(tp))) ** 2

    integral = float(cumulative_quad(a_squared, np.array([t]), t_ref)[0])
    a = phys.a0 + 0.5 * lam * integral
    return A, gamma, ell, c, a


def bright_psi(phys: PhysParams, profile: ModulationProfile, z, t: float,
               t_ref: float = 0.0, lambda_ell: float | None = None,
               exclusion: float = DEFAULT_EXCLUSION_RADIUS):
    """Bright-soliton field at (z, t); requires m = 1 and gamma0 < 0."""
    if abs(1.0 - phys.m) > _M_ONE_BAND:
        raise DomainError(f"bright soliton needs modulus m = 1, got {phys.m!r}")
    if phys.gamma0 >= 0.0:
        raise DomainError("bright soliton needs attractive nonlinearity gamma0 < 0")
    A, _, ell, c, a = schedule_at(phys, profile, t, t_ref=t_ref,
                                  lambda_ell=lambda_ell, exclusion=exclusion)
    return field_from_schedule(phys, A, ell, c, a, z)


def cnoidal_F(T, phys: PhysParams):
    """Traveling-frame profile F(T) = cn(T/tau0, m); sech at m = 1."""
    m = validate_modulus(phys.m)
    if m == 0.0:
        raise DomainError(
            "width undefined at m = 0: tau0^2 = -m A0/gamma0 vanishes")
    tau0 = phys.tau0
    T = np.asarray(T, dtype=float)
    if 1.0 - m < _M_ONE_BAND:
        return 1.0 / np.cosh(T / tau0)
    return jacobi_cn(T / tau0, m)


def elliptic_residual(phys: PhysParams, Tgrid, lambda_ell: float | None = None) -> float:
    """Max |F'' - lambda F + 2 kappa_eff F^3| on the interior of a uniform grid.

    F'' is a 5-point stencil; kappa_eff = m / tau0^2, which equals the
    physical kappa = -gamma0/A0 under tau0^2 = -m A0/gamma0.
    """
    Tgrid = np.asarray(Tgrid, dtype=float)
    if len(Tgrid) < 7:
        raise DomainError("need at least 7 grid points")
    h = Tgrid[1] - Tgrid[0]
    if np.max(np.abs(np.diff(Tgrid) - h)) > 1e-9 * abs(h):
        raise DomainError("Tgrid must be uniform")
    lam = phys.lambda_ell if lambda_ell is None else float(lambda_ell)
    kappa_eff = phys.m / phys.tau0_sq
    F = cnoidal_F(Tgrid, phys)
    Fpp = (-F[4:] + 16 * F[3:-1] - 30 * F[2:-2] + 16 * F[1:-3] - F[:-4]) / (12.0 * h * h)
    Fi = F[2:-2]
    return float(np.max(np.abs(Fpp - lam * Fi + 2.0 * kappa_eff * Fi ** 3)))


def field_from_schedule(phys: PhysParams, A: float, ell: float, c: float,
                        a: float, z):
    """Assemble the bright field from precomputed schedule values."""
    z = np.asarray(z, dtype=float)
    arg = A * (z - ell) / phys.tau0
    return np.sqrt(A) / np.cosh(arg) * np.exp(1j * (a - 0.5 * c * z * z))


def sample_field(phys: PhysParams, profile: ModulationProfile, grid, t: float,
                 t_ref: float = 0.0, lambda_ell: float | None = None,
                 exclusion: float = DEFAULT_EXCLUSION_RADIUS):
    """Bright-soliton field sampled on a Grid1D at one time."""
    from .gpe import WaveField

    values = bright_psi(phys, profile, grid.z, t, t_ref=t_ref,
                        lambda_ell=lambda_ell, exclusion=exclusion)
    return WaveField(grid=grid, values=values, t=float(t))
