import numpy as np
import pytest

from trapwave.consistency import (PhysParams, amplitude_quadrature_check,
                                  center_of_mass_residual, control_trajectory,
                                  cumulative_quad, riccati_cross_check)
from trapwave.errors import DomainError, SingularWindowError
from trapwave.modulation import (make_constant, make_oscillator_rational,
                                 make_oscillator_regular, make_scarf1_regular)


class TestPhysParams:
    def test_bright_case(self):
        p = PhysParams(A0=0.5, gamma0=-0.5)
        assert p.tau0 == pytest.approx(1.0)
        assert p.kappa == pytest.approx(1.0)
        assert p.lambda_ell == pytest.approx(1.0)

    def test_general_modulus(self):
        p = PhysParams(A0=0.5, gamma0=-0.5, m=0.5)
        assert p.tau0_sq == pytest.approx(0.5)
        assert p.lambda_ell == pytest.approx(0.0)
        p = PhysParams(A0=0.5, gamma0=-0.5, m=0.25)
        assert p.lambda_ell == pytest.approx(-0.5 / 0.25)

    def test_validation(self):
        with pytest.raises(DomainError):
            PhysParams(A0=0.0, gamma0=-0.5)
        with pytest.raises(DomainError):
            PhysParams(A0=0.5, gamma0=0.0)
        with pytest.raises(DomainError):
            PhysParams(A0=0.5, gamma0=-0.5, m=1.5)
        # repulsive case exists, but has no real width
        p = PhysParams(A0=0.5, gamma0=0.5)
        with pytest.raises(DomainError):
            p.tau0


class TestCumulativeQuad:
    def test_against_antiderivative(self):
        t = np.linspace(-1.0, 2.0, 31)
        vals = cumulative_quad(np.cos, t, 0.5)
        np.testing.assert_allclose(vals, np.sin(t) - np.sin(0.5), atol=1e-12)

    def test_reference_off_grid(self):
        t = np.array([0.0, 1.0])
        vals = cumulative_quad(np.exp, t, 0.25)
        np.testing.assert_allclose(vals, np.exp(t) - np.exp(0.25), atol=1e-12)


class TestControlTrajectory:
    def test_regular_oscillator_closed_forms(self):
        profile = make_oscillator_regular()
        phys = PhysParams(A0=0.5, gamma0=-0.5, ell0=-4.0)
        t = np.linspace(0.0, 2.0, 201)
        traj = control_trajectory(profile, phys, t)
        np.testing.assert_allclose(traj.A, 0.5 * np.exp(0.5 * t * t),
                                   rtol=1e-13)
        np.testing.assert_allclose(traj.gamma, -traj.A, rtol=1e-13)
        np.testing.assert_allclose(traj.ell, -4.0 * np.exp(-0.5 * t * t),
                                   rtol=1e-13)
        assert traj.A[100] == pytest.approx(0.5 * np.exp(0.5), rel=1e-12)
        assert traj.c[100] == pytest.approx(1.0, rel=1e-12)

    def test_phase_free_case(self):
        profile = make_constant(0.0)
        phys = PhysParams(A0=0.5, gamma0=-0.5)
        t = np.linspace(0.0, 4.0, 41)
        traj = control_trajectory(profile, phys, t)
        # a = (lambda/2) A0^2 t = t/8 here
        np.testing.assert_allclose(traj.a, t / 8.0, atol=1e-12)
        np.testing.assert_allclose(traj.c, 0.0)
        np.testing.assert_allclose(traj.A, 0.5)

    def test_phase_oscillator_oracle(self):
        mp = pytest.importorskip("mpmath")
        profile = make_oscillator_regular()
        phys = PhysParams(A0=0.5, gamma0=-0.5)
        traj = control_trajectory(profile, phys, np.linspace(0, 1, 11))
        # integral of exp(t^2) over [0,1] via erfi
        oracle = 0.125 * float(mp.sqrt(mp.pi) / 2 * mp.erfi(1))
        assert traj.a[-1] == pytest.approx(oracle, rel=1e-10)

    def test_nonzero_a0_and_reference(self):
        profile = make_oscillator_regular()
        phys = PhysParams(A0=0.5, gamma0=-0.5, a0=2.0)
        t = np.linspace(-1.0, 1.0, 21)
        traj = control_trajectory(profile, phys, t, t_ref=-1.0)
        assert traj.a[0] == pytest.approx(2.0, abs=1e-14)

    def test_grid_validation(self):
        profile = make_constant(0.0)
        phys = PhysParams(A0=0.5, gamma0=-0.5)
        with pytest.raises(DomainError):
            control_trajectory(profile, phys, [1.0, 0.5])
        with pytest.raises(DomainError):
            control_trajectory(profile, phys, [1.0, 2.0], t_ref=0.0)

    def test_singular_window_rejected(self):
        profile = make_scarf1_regular(6.0, 4.9)
        phys = PhysParams(A0=0.5, gamma0=-0.5)
        with pytest.raises(SingularWindowError):
            control_trajectory(profile, phys, np.linspace(0.0, 2.0, 21))

    def test_domain_bounds_rejected(self):
        profile = make_scarf1_regular(6.0, 4.9)
        phys = PhysParams(A0=0.5, gamma0=-0.5)
        with pytest.raises(DomainError):
            control_trajectory(profile, phys, np.linspace(-8.0, -7.0, 5),
                               t_ref=-7.5)

    def test_csv_row_layout(self):
        profile = make_constant(0.01)
        phys = PhysParams(A0=0.5, gamma0=-0.5)
        traj = control_trajectory(profile, phys, np.linspace(0, 1, 5))
        rows = traj.as_rows()
        assert rows.shape == (5, 8)
        np.testing.assert_allclose(rows[:, 0], traj.t)
        np.testing.assert_allclose(rows[:, 4], traj.A)


class TestCrossChecks:
    def test_amplitude_equivalence(self):
        phys = PhysParams(A0=0.5, gamma0=-0.5)
        for make in (make_oscillator_regular, make_oscillator_rational):
            dev = amplitude_quadrature_check(make(), phys,
                                             np.linspace(0, 2, 101))
            assert dev < 1e-7

    def test_center_of_mass(self):
        phys = PhysParams(A0=0.5, gamma0=-0.5, ell0=-4.0)
        traj = control_trajectory(make_oscillator_regular(), phys,
                                  np.linspace(0, 2, 2001))
        assert center_of_mass_residual(traj) < 1e-6

    def test_center_of_mass_needs_uniform_grid(self):
        phys = PhysParams(A0=0.5, gamma0=-0.5, ell0=1.0)
        t = np.concatenate([np.linspace(0, 1, 6), [1.5, 2.5]])
        traj = control_trajectory(make_constant(0.0), phys, t)
        with pytest.raises(DomainError):
            center_of_mass_residual(traj)

    def test_riccati_ode_agreement(self):
        assert riccati_cross_check(make_oscillator_regular(), 0.0, 2.0) < 1e-7
        assert riccati_cross_check(make_constant(0.01), 0.0, 10.0) < 1e-9
