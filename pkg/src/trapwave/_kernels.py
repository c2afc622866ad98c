"""Hot numeric kernels with numba-compiled and pure-numpy implementations.

Both implementations are always importable (the benchmark compares them
head to head); the public aliases ``cn_sn_agm`` and ``diagonal_phase``
select the numba path when it is available and not disabled via the
``TRAPWAVE_NO_NUMBA`` environment variable.
"""

from __future__ import annotations

import os

import numpy as np

NUMBA_DISABLED = os.environ.get("TRAPWAVE_NO_NUMBA", "").lower() in ("1", "true", "yes")

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        if len(args) == 1 and callable(args[0]):
            return args[0]
        return wrap


_AGM_MAX_DEPTH = 32
_AGM_TOL = 1e-15


def agm_scale(m: float) -> tuple[np.ndarray, np.ndarray, int]:
    """Descending-Landen AGM tables for modulus m in [0, 1).

    Returns (a, c, n) where a[k], c[k] are the arithmetic means and
    half-differences of the AGM iteration and n is the converged depth.
    The quarter period is K(m) = pi / (2 * a[n]).
    """
    a = np.empty(_AGM_MAX_DEPTH + 1)
    c = np.empty(_AGM_MAX_DEPTH + 1)
    a[0] = 1.0
    b = np.sqrt(1.0 - m)
    c[0] = np.sqrt(m)
    n = 0
    while abs(c[n]) > _AGM_TOL and n < _AGM_MAX_DEPTH:
        an = 0.5 * (a[n] + b)
        bn = np.sqrt(a[n] * b)
        c[n + 1] = 0.5 * (a[n] - b)
        a[n + 1] = an
        b = bn
        n += 1
    return a, c, n


def _cn_sn_agm_numpy(u: np.ndarray, a: np.ndarray, c: np.ndarray, n: int):
    """Vectorized Gauss/Landen phase recursion. u is reduced mod 4K first."""
    quarter = np.pi / (2.0 * a[n])  # K(m)
    period = 4.0 * quarter
    ured = u - period * np.rint(u / period)
    phi = (2.0 ** n) * a[n] * ured
    for k in range(n, 0, -1):
        s = np.clip(c[k] / a[k] * np.sin(phi), -1.0, 1.0)
        phi = 0.5 * (phi + np.arcsin(s))
    return np.cos(phi), np.sin(phi)


@njit(cache=True)
def _cn_sn_agm_numba(u, a, c, n):  # pragma: no cover - exercised via dispatch
    quarter = np.pi / (2.0 * a[n])
    period = 4.0 * quarter
    cn = np.empty_like(u)
    sn = np.empty_like(u)
    for i in range(u.size):
        ured = u[i] - period * np.rint(u[i] / period)
        phi = (2.0 ** n) * a[n] * ured
        for k in range(n, 0, -1):
            s = c[k] / a[k] * np.sin(phi)
            if s > 1.0:
                s = 1.0
            elif s < -1.0:
                s = -1.0
            phi = 0.5 * (phi + np.arcsin(s))
        cn[i] = np.cos(phi)
        sn[i] = np.sin(phi)
    return cn, sn


def _diagonal_phase_numpy(psi: np.ndarray, g: float, mhalf: float, z2: np.ndarray, h: float):
    """psi * exp(-i h (g |psi|^2 + mhalf * z2)), the split-step diagonal factor."""
    dens = psi.real * psi.real + psi.imag * psi.imag
    return psi * np.exp(-1j * h * (g * dens + mhalf * z2))


@njit(cache=True)
def _diagonal_phase_numba(psi, g, mhalf, z2, h):  # pragma: no cover
    out = np.empty_like(psi)
    for i in range(psi.size):
        dens = psi[i].real * psi[i].real + psi[i].imag * psi[i].imag
        theta = -h * (g * dens + mhalf * z2[i])
        out[i] = psi[i] * complex(np.cos(theta), np.sin(theta))
    return out


if HAVE_NUMBA and not NUMBA_DISABLED:
    cn_sn_agm = _cn_sn_agm_numba
    diagonal_phase = _diagonal_phase_numba
    ACTIVE_PATH = "numba"
else:
    cn_sn_agm = _cn_sn_agm_numpy
    diagonal_phase = _diagonal_phase_numpy
    ACTIVE_PATH = "numpy"
