"""Engineered nonautonomous bright solitons in modulated traps.

The package derives control schedules (amplitude, nonlinearity, center
of mass, phase) from a trap-modulation eigenfunction phi(t) via the
logarithmic-derivative map c = -(ln phi)', builds the corresponding
analytic fields, and validates them against the full time-dependent
equation with an independent split-step integrator.
"""

from .consistency import (ControlTrajectory, PhysParams,
                          amplitude_quadrature_check, center_of_mass_residual,
                          control_trajectory, riccati_cross_check)
from .errors import (ConfigError, DomainError, GridMismatchError,
                     NonConvergenceError, OdeStepError, ResolutionError,
                     SingularWindowError, TrapwaveError)
from .gpe import (Grid1D, WaveField, compare_fields, convergence_order,
                  gpe_residual, norm, split_step_evolve)
from .modulation import (ModulationProfile, make_constant, make_numeric,
                         make_oscillator_rational, make_oscillator_regular,
                         make_scarf1_rational, make_scarf1_regular,
                         singular_times)
from .numerics import (diff_central, ellipk_agm, jacobi_cn, jacobi_cn_sn,
                       ode_solve, quad_adaptive)
from .scenarios import (REGISTRY, ScenarioConfig, dump_config, figure_names,
                        get_scenario, load_config, registry_names)
from .soliton import (bright_psi, cnoidal_F, elliptic_residual, sample_field,
                      schedule_at)

__version__ = "0.1.0"
