"""Timing comparison of the numba and pure-numpy kernel paths.

Run:  python3 benchmarks/bench_kernels.py

The same functions back both paths (selected at import time by the
TRAPWAVE_NO_NUMBA environment variable); here we call the private
implementations directly so one process can time both.
"""

import time

import numpy as np

import trapwave._kernels as kernels


def bench(label, fn, *args, repeat=5):
    fn(*args)  # warm-up (includes jit compile for the numba path)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    print(f"  {label:28s} {best * 1e3:10.3f} ms")
    return best


def main():
    rng = np.random.default_rng(42)

    print("jacobi cn/sn via AGM (1e6 arguments, m = 0.7)")
    u = rng.uniform(-50.0, 50.0, 1_000_000)
    a, c, n = kernels.agm_scale(0.7)
    t_np = bench("numpy", kernels._cn_sn_agm_numpy, u, a, c, n)
    t_nb = bench("numba", kernels._cn_sn_agm_numba, u, a, c, n)
    print(f"  speedup numba/numpy: {t_np / t_nb:.2f}x")

    print("diagonal phase step (N = 4096, 1000 calls)")
    N = 4096
    psi = rng.normal(size=N) + 1j * rng.normal(size=N)
    z2 = np.linspace(-48.0, 48.0, N) ** 2

    def many(fn):
        def run():
            p = psi
            for _ in range(1000):
                p = fn(p, -0.5, 0.005, z2, 1e-4)
            return p
        return run

    t_np = bench("numpy", many(kernels._diagonal_phase_numpy))
    t_nb = bench("numba", many(kernels._diagonal_phase_numba))
    print(f"  speedup numba/numpy: {t_np / t_nb:.2f}x")


if __name__ == "__main__":
    main()
