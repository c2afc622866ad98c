import numpy as np
import pytest

from trapwave.consistency import PhysParams
from trapwave.errors import (DomainError, GridMismatchError, ResolutionError,
                             SingularWindowError)
from trapwave.gpe import (Grid1D, WaveField, compare_fields, gpe_residual,
                          norm, split_step_evolve)
from trapwave.modulation import (make_constant, make_oscillator_regular,
                                 make_scarf1_regular)
from trapwave.soliton import sample_field

PHYS = PhysParams(A0=0.5, gamma0=-0.5)
WIDE = Grid1D(-48.0, 48.0, 4096)


class TestGrid:
    def test_properties(self):
        g = Grid1D(-20.0, 20.0, 1024)
        assert g.dz == pytest.approx(40.0 / 1024)
        assert g.z[0] == -20.0
        assert g.z[-1] == pytest.approx(20.0 - g.dz)
        assert g.k[1] == pytest.approx(2 * np.pi / 40.0)

    def test_validation(self):
        with pytest.raises(DomainError):
            Grid1D(-1.0, -2.0, 64)
        with pytest.raises(DomainError):
            Grid1D(-1.0, 1.0, 100)  # not a power of two
        with pytest.raises(DomainError):
            Grid1D(-1.0, 1.0, 4)

    def test_field_shape_guard(self):
        g = Grid1D(-1.0, 1.0, 64)
        with pytest.raises(GridMismatchError):
            WaveField(grid=g, values=np.zeros(32), t=0.0)


class TestResidual:
    def test_consistent_field_solves_equation(self):
        resid = gpe_residual(PHYS, make_oscillator_regular(), WIDE, 0.7)
        assert resid < 1e-5

    def test_flipped_lambda_breaks_equation(self):
        resid = gpe_residual(PHYS, make_oscillator_regular(), WIDE, 0.7,
                             lambda_ell=-PHYS.lambda_ell)
        assert resid > 1e-1

    def test_display_trap_convention_breaks_equation(self):
        resid = gpe_residual(PHYS, make_oscillator_regular(), WIDE, 0.7,
                             trap="paper")
        assert resid > 1e-1

    def test_narrow_grid_rejected(self):
        # tails ~6e-5 at |z|=20 violate the 1e-10 edge requirement
        with pytest.raises(DomainError):
            gpe_residual(PHYS, make_oscillator_regular(),
                         Grid1D(-20.0, 20.0, 1024), 0.7)

    def test_stencil_near_singularity_rejected(self):
        profile = make_scarf1_regular(6.0, 4.9)
        with pytest.raises(SingularWindowError):
            gpe_residual(PHYS, profile, WIDE, np.pi / 2 - 0.01)

    def test_spatially_converged(self):
        # with a coarse t-stencil its truncation dominates, so doubling N
        # barely moves the residual (spectral part fully converged)
        resid1 = gpe_residual(PHYS, make_oscillator_regular(), WIDE, 1.1,
                              dt_stencil=0.02)
        resid2 = gpe_residual(PHYS, make_oscillator_regular(),
                              Grid1D(-48.0, 48.0, 8192), 1.1,
                              dt_stencil=0.02)
        assert abs(resid2 - resid1) < 0.1 * resid1


class TestSplitStep:
    def test_free_soliton_stationary(self):
        profile = make_constant(0.0)
        f0 = sample_field(PHYS, profile, WIDE, 0.0)
        out = split_step_evolve(f0, PHYS, profile, 1.0, 1e-3)
        ref = sample_field(PHYS, profile, WIDE, 1.0)
        linf, l2 = compare_fields(out, ref)
        assert linf < 1e-8
        assert l2 < 1e-8

    def test_norm_conservation(self):
        profile = make_oscillator_regular()
        f0 = sample_field(PHYS, profile, WIDE, 0.0)
        out = split_step_evolve(f0, PHYS, profile, 1.0, 5e-4)
        assert abs(norm(out) - norm(f0)) / norm(f0) < 1e-10

    def test_deterministic(self):
        profile = make_oscillator_regular()
        f0 = sample_field(PHYS, profile, WIDE, 0.0)
        a = split_step_evolve(f0, PHYS, profile, 0.2, 1e-3)
        b = split_step_evolve(f0, PHYS, profile, 0.2, 1e-3)
        assert np.array_equal(a.values, b.values)

    def test_resolution_guard(self):
        profile = make_oscillator_regular()
        coarse = Grid1D(-48.0, 48.0, 256)
        f0 = sample_field(PHYS, profile, coarse, 0.0)
        with pytest.raises(ResolutionError):
            split_step_evolve(f0, PHYS, profile, 1.0, 1e-3)

    def test_singular_window_guard(self):
        profile = make_scarf1_regular(6.0, 4.9)
        f0 = sample_field(PHYS, profile, WIDE, 0.0)
        with pytest.raises(SingularWindowError):
            split_step_evolve(f0, PHYS, profile, 2.0, 1e-3)

    def test_diagonal_only_phase_rotation(self):
        # without the kinetic factor each node rotates by the local phase;
        # density must be exactly preserved
        profile = make_constant(0.0)
        f0 = sample_field(PHYS, profile, WIDE, 0.0)
        out = split_step_evolve(f0, PHYS, profile, 0.5, 1e-3,
                                kinetic_enabled=False)
        np.testing.assert_allclose(out.density(), f0.density(), atol=1e-14)

    def test_argument_validation(self):
        profile = make_constant(0.0)
        f0 = sample_field(PHYS, profile, WIDE, 0.0)
        with pytest.raises(DomainError):
            split_step_evolve(f0, PHYS, profile, 1.0, -1e-3)
        with pytest.raises(DomainError):
            split_step_evolve(f0, PHYS, profile, -1.0, 1e-3)


class TestCompare:
    def test_grid_mismatch(self):
        a = sample_field(PHYS, make_constant(0.0), WIDE, 0.0)
        b = sample_field(PHYS, make_constant(0.0), Grid1D(-48.0, 48.0, 2048),
                         0.0)
        with pytest.raises(GridMismatchError):
            compare_fields(a, b)

    def test_time_mismatch(self):
        a = sample_field(PHYS, make_constant(0.0), WIDE, 0.0)
        b = sample_field(PHYS, make_constant(0.0), WIDE, 0.5)
        with pytest.raises(GridMismatchError):
            compare_fields(a, b)

    def test_self_distance_zero(self):
        a = sample_field(PHYS, make_constant(0.0), WIDE, 0.0)
        assert compare_fields(a, a) == (0.0, 0.0)
