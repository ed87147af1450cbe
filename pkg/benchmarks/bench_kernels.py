"""Compare the jitted kernels against the pure-numpy fallback.

Run twice, once per backend:

    DENOMLAB_NUMBA=1 python3 benchmarks/bench_kernels.py
    DENOMLAB_NUMBA=0 python3 benchmarks/bench_kernels.py

The backend is fixed at import time, so a single process cannot time both.
"""
import time

import numpy as np

from denomlab import kernels
from denomlab.rng import uniform_dyadic_matrix


def _timed(fn):
    t0 = time.perf_counter_ns()
    fn()
    return time.perf_counter_ns() - t0


def bench(label, fn, repeats=3):
    fn()  # warm-up (includes jit compilation on the numba backend)
    best = min(_timed(fn) for _ in range(repeats))
    print(f"  {label:<28} {best / 1e6:9.2f} ms")


def main():
    print(f"backend: {kernels.BACKEND}")

    n = 2
    xs = uniform_dyadic_matrix(0, 5000, n)
    lo = np.zeros(n)
    hi = np.full(n, 1e-4)
    lo_open = np.zeros(n, dtype=bool)
    hi_open = np.ones(n, dtype=bool)

    bench("box_qmin_batch 5k @ 1e-4",
          lambda: kernels.box_qmin_batch(xs, lo, hi, lo_open, hi_open, 10**7))

    whi = np.full(n, 0.02)
    bench("box_count_batch 5k Q=200",
          lambda: kernels.box_count_batch(xs, lo, whi, lo_open, hi_open, 200))

    om = uniform_dyadic_matrix(1, 5000, n)
    bench("resonance_orders 5k rho=1e-4",
          lambda: kernels.resonance_orders_batch(om, 1e-4, 480))


if __name__ == "__main__":
    main()
