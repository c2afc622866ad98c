import numpy as np
import pytest

from trapwave.consistency import PhysParams, control_trajectory
from trapwave.errors import DomainError
from trapwave.gpe import Grid1D, norm
from trapwave.modulation import make_constant, make_oscillator_regular
from trapwave.soliton import (bright_psi, cnoidal_F, elliptic_residual,
                              sample_field, schedule_at)

PHYS = PhysParams(A0=0.5, gamma0=-0.5)


class TestBrightPsi:
    def test_origin_value(self):
        psi = bright_psi(PHYS, make_oscillator_regular(), 0.0, 0.0)
        assert abs(psi) == pytest.approx(np.sqrt(0.5), rel=1e-14)
        assert np.angle(psi) == pytest.approx(0.0, abs=1e-14)

    def test_quadratic_phase(self):
        profile = make_constant(0.01)
        c0 = float(profile.c(0.0))
        z = 1.3
        psi = bright_psi(PHYS, profile, z, 0.0)
        assert np.angle(psi) == pytest.approx(-0.5 * c0 * z * z, abs=1e-12)

    def test_modulus_guard(self):
        phys = PhysParams(A0=0.5, gamma0=-0.5, m=0.9)
        with pytest.raises(DomainError):
            bright_psi(phys, make_constant(0.0), 0.0, 0.0)

    def test_repulsive_guard(self):
        phys = PhysParams(A0=0.5, gamma0=0.5)
        with pytest.raises(DomainError):
            bright_psi(phys, make_constant(0.0), 0.0, 0.0)

    def test_offaxis_drift_toward_axis(self):
        profile = make_oscillator_regular()
        phys = PhysParams(A0=0.5, gamma0=-0.5, ell0=-4.0)
        _, _, ell1, _, _ = schedule_at(phys, profile, 1.0)
        _, _, ell2, _, _ = schedule_at(phys, profile, 2.0)
        assert ell1 == pytest.approx(-4.0 * np.exp(-0.5), rel=1e-12)
        assert abs(ell2) < abs(ell1) < 4.0


class TestCnoidal:
    def test_unit_at_origin(self):
        for m in (0.1, 0.5, 1.0):
            phys = PhysParams(A0=0.5, gamma0=-0.5, m=m)
            assert float(cnoidal_F(0.0, phys)) == pytest.approx(1.0)

    def test_sech_at_m1(self):
        assert float(cnoidal_F(3.0, PHYS)) == pytest.approx(
            1.0 / np.cosh(3.0), rel=1e-14)

    def test_m_zero_width_undefined(self):
        phys = PhysParams(A0=0.5, gamma0=-0.5, m=0.0)
        with pytest.raises(DomainError):
            cnoidal_F(1.0, phys)

    def test_m_to_one_continuity(self):
        phys = PhysParams(A0=0.5, gamma0=-0.5, m=1.0 - 1e-10)
        T = np.linspace(-5, 5, 501)
        F = cnoidal_F(T, phys)
        np.testing.assert_allclose(F, 1.0 / np.cosh(T / phys.tau0), atol=1e-5)


class TestEllipticResidual:
    def test_sech_solves(self):
        h = 1e-3
        T = np.arange(-10.0, 10.0 + h / 2, h)
        assert elliptic_residual(PHYS, T) < 1e-9

    def test_cn_solves_general_m(self):
        h = 3e-3
        T = np.arange(-5.0, 5.0 + h / 2, h)
        for m in (0.25, 0.5, 0.75):
            phys = PhysParams(A0=0.5, gamma0=-0.5, m=m)
            assert elliptic_residual(phys, T) < 1e-9

    def test_wrong_sign_fails_loudly(self):
        h = 1e-3
        T = np.arange(-10.0, 10.0 + h / 2, h)
        bad = elliptic_residual(PHYS, T, lambda_ell=-PHYS.lambda_ell)
        # residual magnitude 2 |lambda| max|F| = 2
        assert bad == pytest.approx(2.0, rel=1e-3)

    def test_grid_validation(self):
        with pytest.raises(DomainError):
            elliptic_residual(PHYS, np.linspace(0, 1, 5))
        with pytest.raises(DomainError):
            elliptic_residual(PHYS, np.array([0, 0.1, 0.15, 0.3, 0.4, 0.5, 0.6]))


class TestSampleField:
    def test_even_density_on_axis(self):
        grid = Grid1D(-20.0, 20.0, 1024)
        field = sample_field(PHYS, make_oscillator_regular(), grid, 0.5)
        d = field.density()
        # z=0 sits at index N/2; mirror indices around it
        np.testing.assert_allclose(d[1:], d[1:][::-1], atol=1e-12)

    def test_norm_is_2tau0(self):
        grid = Grid1D(-20.0, 20.0, 1024)
        field = sample_field(PHYS, make_oscillator_regular(), grid, 0.0)
        assert norm(field) == pytest.approx(2.0, rel=1e-8)

    def test_peak_density_equals_amplitude(self):
        grid = Grid1D(-20.0, 20.0, 1024)
        field = sample_field(PHYS, make_oscillator_regular(), grid, 1.0)
        expected = 0.5 * np.exp(0.5)
        assert float(np.max(field.density())) == pytest.approx(expected,
                                                               rel=1e-9)

    def test_schedule_matches_trajectory(self):
        profile = make_oscillator_regular()
        phys = PhysParams(A0=0.5, gamma0=-0.5, ell0=-4.0, a0=0.3)
        t = np.linspace(0.0, 1.5, 16)
        traj = control_trajectory(profile, phys, t)
        A, gamma, ell, c, a = schedule_at(phys, profile, 1.5)
        assert A == pytest.approx(traj.A[-1], rel=1e-12)
        assert gamma == pytest.approx(traj.gamma[-1], rel=1e-12)
        assert ell == pytest.approx(traj.ell[-1], rel=1e-12)
        assert c == pytest.approx(traj.c[-1], rel=1e-12)
        assert a == pytest.approx(traj.a[-1], rel=1e-10)
