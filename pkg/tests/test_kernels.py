import os
import subprocess
import sys

import numpy as np

import trapwave._kernels as kernels


def test_dual_paths_agree():
    rng = np.random.default_rng(3)
    for m in (0.2, 0.7, 0.97):
        a, c, n = kernels.agm_scale(m)
        u = rng.uniform(-30, 30, 500)
        cn_np, sn_np = kernels._cn_sn_agm_numpy(u, a, c, n)
        cn_nb, sn_nb = kernels._cn_sn_agm_numba(u, a, c, n)
        np.testing.assert_allclose(cn_np, cn_nb, atol=1e-14)
        np.testing.assert_allclose(sn_np, sn_nb, atol=1e-14)


def test_diagonal_phase_paths_agree():
    rng = np.random.default_rng(4)
    psi = rng.normal(size=256) + 1j * rng.normal(size=256)
    z2 = np.linspace(-10, 10, 256) ** 2
    out_np = kernels._diagonal_phase_numpy(psi, -0.5, 0.01, z2, 2e-4)
    out_nb = kernels._diagonal_phase_numba(psi.copy(), -0.5, 0.01, z2, 2e-4)
    np.testing.assert_allclose(out_np, out_nb, atol=1e-15)


def test_diagonal_phase_is_unitary():
    rng = np.random.default_rng(5)
    psi = rng.normal(size=128) + 1j * rng.normal(size=128)
    z2 = np.linspace(-5, 5, 128) ** 2
    out = kernels.diagonal_phase(psi, -0.5, 0.3, z2, 1e-3)
    np.testing.assert_allclose(np.abs(out), np.abs(psi), atol=1e-14)


def test_env_flag_selects_numpy_path():
    env = dict(os.environ, TRAPWAVE_NO_NUMBA="1")
    code = ("import trapwave._kernels as k; "
            "print(k.ACTIVE_PATH); "
            "print(k.cn_sn_agm.__name__)")
    out = subprocess.run([sys.executable, "-c", code], env=env,
                         capture_output=True, text=True, check=True)
    lines = out.stdout.split()
    assert lines[0] == "numpy"
    assert "numpy" in lines[1]


def test_default_path_reported():
    assert kernels.ACTIVE_PATH in ("numba", "numpy")
