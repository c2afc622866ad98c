"""Self-contained special functions and adaptive numerical kernels.

Everything here is a pure function of its inputs: Jacobi elliptic
functions through the descending-Landen AGM scheme, Gauss-Kronrod
adaptive quadrature, a Dormand-Prince 5(4) integrator with dense output,
and high-order stencil differentiation.  No module-level state is
mutated after import, so all routines are safe to call concurrently.
"""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

from . import _kernels
from .errors import DomainError, NonConvergenceError, OdeStepError

__all__ = [
    "validate_modulus",
    "jacobi_cn",
    "jacobi_cn_sn",
    "ellipk_agm",
    "quad_adaptive",
    "ode_solve",
    "OdeSolution",
    "diff_central",
]

# AGM degenerates as m -> 1 (K diverges); switch to the analytic
# sech/tanh limit inside this band.
_M_ONE_BAND = 1e-12


def validate_modulus(m: float) -> float:
    m = float(m)
    if not (0.0 <= m <= 1.0) or not np.isfinite(m):
        raise DomainError(f"elliptic modulus must lie in [0, 1], got {m!r}")
    return m


def jacobi_cn_sn(u, m: float):
    """cn(u, m) and sn(u, m) for real u (scalar or array), m in [0, 1].

    Uses one AGM pass for both functions; the argument is reduced modulo
    the full period 4K(m) so accuracy is uniform for |u| <= 50.  For
    m within 1e-12 of 1 the analytic sech/tanh limit is returned.
    """
    m = validate_modulus(m)
    u_arr = np.asarray(u, dtype=float)
    scalar = u_arr.ndim == 0
    u_flat = np.atleast_1d(u_arr).ravel()
    if 1.0 - m < _M_ONE_BAND:
        cn = 1.0 / np.cosh(u_flat)
        sn = np.tanh(u_flat)
    else:
        a, c, n = _kernels.agm_scale(m)
        cn, sn = _kernels.cn_sn_agm(u_flat, a, c, n)
    if scalar:
        return float(cn[0]), float(sn[0])
    shape = np.atleast_1d(u_arr).shape
    return cn.reshape(shape), sn.reshape(shape)


def jacobi_cn(u, m: float):
    """cn(u, m); see :func:`jacobi_cn_sn`."""
    return jacobi_cn_sn(u, m)[0]


def ellipk_agm(m: float) -> float:
    """Complete elliptic integral K(m) = pi / (2 AGM(1, sqrt(1 - m)))."""
    m = validate_modulus(m)
    if 1.0 - m < _M_ONE_BAND:
        raise DomainError("K(m) diverges as m -> 1")
    a, _, n = _kernels.agm_scale(m)
    return np.pi / (2.0 * a[n])


# ---------------------------------------------------------------------------
# Gauss-Kronrod 7-15 adaptive quadrature

_XK = np.array([
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0,
])
_WK = np.array([
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728,
])
_WG = np.array([
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469,
])

# full symmetric node/weight sets
_NODES = np.concatenate([-_XK[:-1], _XK[::-1]])
_WK_FULL = np.concatenate([_WK[:-1], _WK[::-1]])
_WG_FULL = np.zeros_like(_WK_FULL)
# Gauss nodes sit at every other Kronrod node (odd indices of _XK).
_gauss_idx = [1, 3, 5, 7, 9, 11, 13]
_WG_FULL[_gauss_idx] = np.concatenate([_WG[:-1], _WG[::-1]])


def _gk15(f: Callable[[float], float], a: float, b: float) -> tuple[float, float]:
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    fx = np.array([f(mid + half * x) for x in _NODES], dtype=float)
    if not np.all(np.isfinite(fx)):
        raise DomainError(f"integrand not finite inside [{a!r}, {b!r}]")
    k = half * float(_WK_FULL @ fx)
    g = half * float(_WG_FULL @ fx)
    return k, abs(k - g)


def quad_adaptive(f: Callable[[float], float], t0: float, t1: float,
                  tol: float = 1e-10, max_intervals: int = 4000,
                  rel_floor: float = 0.0) -> float:
    """Integral of f over [t0, t1] with absolute error estimate <= tol.

    Gauss-Kronrod 7-15 error estimation with interval bisection; the
    tolerance is allocated proportionally to interval length.  Raises
    NonConvergenceError when the subdivision budget is exhausted.
    ``rel_floor`` optionally relaxes the per-interval target by a
    relative amount, for integrands with very large local magnitude.
    """
    if tol <= 0.0:
        raise DomainError("tolerance must be positive")
    if t0 == t1:
        return 0.0
    sign = 1.0
    if t1 < t0:
        t0, t1 = t1, t0
        sign = -1.0
    total_len = t1 - t0
    stack = [(t0, t1)]
    result = 0.0
    used = 0
    while stack:
        a, b = stack.pop()
        used += 1
        if used > max_intervals:
            raise NonConvergenceError(
                f"quadrature budget of {max_intervals} intervals exhausted "
                f"(tol={tol!r})")
        k, err = _gk15(f, a, b)
        if (err <= tol * (b - a) / total_len + rel_floor * abs(k)
                or (b - a) < 1e-14 * total_len):
            result += k
        else:
            mid = 0.5 * (a + b)
            stack.append((a, mid))
            stack.append((mid, b))
    return sign * result


# ---------------------------------------------------------------------------
# Dormand-Prince 5(4) with dense output

_DP_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_DP_A = [
    np.array([]),
    np.array([1 / 5]),
    np.array([3 / 40, 9 / 40]),
    np.array([44 / 45, -56 / 15, 32 / 9]),
    np.array([19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729]),
    np.array([9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656]),
    np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84]),
]
_DP_B = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_DP_E = np.array([71 / 57600, 0.0, -71 / 16695, 71 / 1920,
                  -17253 / 339200, 22 / 525, -1 / 40])
# Shampine's quartic interpolant for the dense output.
_DP_P = np.array([
    [1, -8048581381 / 2820520608, 8663915743 / 2820520608, -12715105075 / 11282082432],
    [0, 0, 0, 0],
    [0, 131558114200 / 32700410799, -68118460800 / 10900136933, 87487479700 / 32700410799],
    [0, -1754552775 / 470086768, 14199869525 / 1410260304, -10690763975 / 1880347072],
    [0, 127303824393 / 49829197408, -318862633887 / 49829197408, 701980252875 / 199316789632],
    [0, -282668133 / 205662961, 2019193451 / 616988883, -1453857185 / 822651844],
    [0, 40617522 / 29380423, -110615467 / 29380423, 69997945 / 29380423],
])


class OdeSolution:
    """Dense-output trajectory from :func:`ode_solve`.

    Callable at any t inside the integration span; ``ts`` and ``ys`` hold
    the accepted step boundaries and the states there.
    """

    def __init__(self, ts, ys, segments, direction):
        self.ts = np.asarray(ts)
        self.ys = np.asarray(ys)
        self._segments = segments  # list of (t_start, h, y_start, Q)
        self._direction = direction

    @property
    def t_span(self) -> tuple[float, float]:
        return float(self.ts[0]), float(self.ts[-1])

    def __call__(self, t):
        t_arr = np.asarray(t, dtype=float)
        scalar = t_arr.ndim == 0
        ts = np.atleast_1d(t_arr).ravel()
        lo, hi = sorted(self.t_span)
        if np.any(ts < lo - 1e-12) or np.any(ts > hi + 1e-12):
            raise DomainError("evaluation time outside the integrated span")
        starts = np.array([s[0] for s in self._segments])
        if self._direction > 0:
            idx = np.clip(np.searchsorted(starts, ts, side="right") - 1,
                          0, len(self._segments) - 1)
        else:
            idx = np.clip(len(starts) - np.searchsorted(starts[::-1], ts, side="left") - 1,
                          0, len(self._segments) - 1)
        out = np.empty((ts.size, self.ys.shape[1]))
        for j, (tj, i) in enumerate(zip(ts, idx)):
            t_start, h, y_start, q = self._segments[i]
            x = (tj - t_start) / h
            p = np.array([x, x * x, x ** 3, x ** 4])
            out[j] = y_start + h * (q @ p)
        if scalar:
            return out[0]
        return out.reshape(np.atleast_1d(t_arr).shape + (self.ys.shape[1],))


def ode_solve(f: Callable[[float, np.ndarray], Sequence[float]],
              y0, t0: float, t1: float,
              tol: float = 1e-10, max_steps: int = 100000) -> OdeSolution:
    """Adaptive Dormand-Prince 5(4) integration of y' = f(t, y).

    ``tol`` is used for both absolute and relative error control.  The
    returned solution carries a quartic dense-output interpolant.
    Raises OdeStepError (with the offending t) on step-size underflow.
    """
    if tol <= 0.0:
        raise DomainError("tolerance must be positive")
    y = np.atleast_1d(np.asarray(y0, dtype=float)).copy()
    if t1 == t0:
        return OdeSolution([t0], [y], [(t0, 1.0, y, np.zeros((y.size, 4)))], 1)
    direction = 1.0 if t1 > t0 else -1.0
    t = float(t0)
    h = direction * min(abs(t1 - t0) / 100.0, 0.1)
    k = np.empty((7, y.size))
    k[0] = f(t, y)
    ts = [t]
    ys = [y.copy()]
    segments = []
    steps = 0
    while (t1 - t) * direction > 0:
        if abs(h) < 1e-14 * max(1.0, abs(t)):
            raise OdeStepError(t)
        steps += 1
        if steps > max_steps:
            raise NonConvergenceError(f"ODE step budget {max_steps} exhausted at t={t!r}")
        if (t + h - t1) * direction > 0:
            h = t1 - t
        for i in range(1, 7):
            yi = y + h * (_DP_A[i] @ k[:i])
            k[i] = f(t + _DP_C[i] * h, yi)
        y_new = y + h * (_DP_B @ k)
        err_vec = h * (_DP_E @ k)
        scale = tol + tol * np.maximum(np.abs(y), np.abs(y_new))
        err = float(np.sqrt(np.mean((err_vec / scale) ** 2)))
        if not np.isfinite(err):
            raise OdeStepError(t, f"non-finite state near t = {t!r}")
        if err <= 1.0:
            q = k.T @ _DP_P
            segments.append((t, h, y.copy(), q))
            t = t + h
            y = y_new
            k[0] = k[6]  # FSAL
            ts.append(t)
            ys.append(y.copy())
            factor = 5.0 if err == 0.0 else min(5.0, 0.9 * err ** -0.2)
            h *= factor
        else:
            h *= max(0.2, 0.9 * err ** -0.2)
    return OdeSolution(ts, ys, segments, direction)


# ---------------------------------------------------------------------------


def diff_central(f: Callable[[float], float], t: float, h: float,
                 domain: tuple[float, float] | None = None) -> float:
    """Five-point central difference df/dt, O(h^4) truncation."""
    if h <= 0.0:
        raise DomainError("stencil width must be positive")
    if domain is not None:
        lo, hi = domain
        if t - 2 * h < lo or t + 2 * h > hi:
            raise DomainError(
                f"stencil [{t - 2 * h!r}, {t + 2 * h!r}] leaves domain [{lo!r}, {hi!r}]")
    return (-f(t + 2 * h) + 8.0 * f(t + h) - 8.0 * f(t - h) + f(t - 2 * h)) / (12.0 * h)
