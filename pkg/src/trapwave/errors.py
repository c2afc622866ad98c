"""Exception types shared across the package."""


class TrapwaveError(Exception):
    """Base class for all package-specific errors."""


class DomainError(TrapwaveError, ValueError):
    """An argument lies outside the mathematically valid range."""


class NonConvergenceError(TrapwaveError, RuntimeError):
    """An adaptive routine exhausted its budget before reaching tolerance."""


class OdeStepError(TrapwaveError, RuntimeError):
    """Step size underflowed, typically near a singularity of the solution."""

    def __init__(self, t: float, message: str | None = None):
        self.t = t
        super().__init__(message or f"step size underflow at t = {t!r}")


class SingularWindowError(TrapwaveError, ValueError):
    """A requested time window contains (or touches) a singular time."""

    def __init__(self, t: float, message: str | None = None):
        self.t = t
        super().__init__(message or f"singular time at t = {t!r} inside the requested window")


class ResolutionError(TrapwaveError, ValueError):
    """The spatial grid cannot resolve the soliton width in the window."""


class GridMismatchError(TrapwaveError, ValueError):
    """Two fields live on different grids or timestamps."""


class ConfigError(TrapwaveError, ValueError):
    """A scenario configuration is malformed or out of range."""
