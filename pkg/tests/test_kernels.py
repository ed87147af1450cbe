import json
import os
import subprocess
import sys
from fractions import Fraction

import numpy as np
import pytest

from denomlab import kernels
from denomlab.qmin import qmin_nd_search
from denomlab.regions import QueryRegion, unit_box

F = Fraction


def _box_args(n, delta):
    lo = np.zeros(n)
    hi = np.full(n, float(delta))
    lo_open = np.zeros(n, dtype=bool)
    hi_open = np.ones(n, dtype=bool)
    return lo, hi, lo_open, hi_open


def test_qmin_kernel_matches_exact_search():
    n, delta = 2, F(1, 1024)
    rng = np.random.default_rng(0)
    xs = np.floor(rng.random((60, n)) * 1024) / 1024  # exact dyadic coords
    lo, hi, lo_open, hi_open = _box_args(n, delta)
    got = kernels.box_qmin_batch(xs, lo, hi, lo_open, hi_open, 10**6)
    for i in range(xs.shape[0]):
        x = tuple(F(int(xs[i, a] * 1024), 1024) for a in range(n))
        expect = qmin_nd_search(QueryRegion(unit_box(n), x, delta)).q
        assert got[i] == expect


def test_count_kernel_matches_exact_count():
    from denomlab.farey import FareyLevel, farey_count_in_query
    from denomlab.regions import RegionSpec

    n, Q = 2, 6
    rng = np.random.default_rng(1)
    xs = np.floor(rng.random((40, n)) * 256) / 256
    w = F(1, 8)
    lo, hi, lo_open, hi_open = _box_args(n, w)
    got = kernels.box_count_batch(xs, lo, hi, lo_open, hi_open, Q)
    level = FareyLevel(n, F(Q))
    for i in range(xs.shape[0]):
        x = tuple(F(int(xs[i, a] * 256), 256) for a in range(n))
        expect = farey_count_in_query(level, QueryRegion(unit_box(n), x, w))
        assert got[i] == expect


def test_resonance_kernel_matches_exact():
    from denomlab.resonance import min_resonance_order, resonance_cap

    n, rho = 2, 0.05
    rng = np.random.default_rng(2)
    om = np.floor(rng.random((50, n)) * 4096) / 4096
    cap = resonance_cap(n, rho)
    got = kernels.resonance_orders_batch(om, rho, cap)
    for i in range(om.shape[0]):
        omega = tuple(F(int(om[i, a] * 4096), 4096) for a in range(n))
        assert got[i] == min_resonance_order(omega, F(rho)).order


PARITY_SNIPPET = """
import numpy as np
from denomlab import kernels
rng = np.random.default_rng(5)
xs = np.floor(rng.random((200, 2)) * 2**20) / 2**20
lo = np.zeros(2); hi = np.full(2, 1/512.)
lo_open = np.zeros(2, dtype=bool); hi_open = np.ones(2, dtype=bool)
q = kernels.box_qmin_batch(xs, lo, hi, lo_open, hi_open, 10**6)
c = kernels.box_count_batch(xs, lo, hi, lo_open, hi_open, 100)
r = kernels.resonance_orders_batch(xs, 0.01, 200)
print(kernels.BACKEND)
print(q.tolist()); print(c.tolist()); print(r.tolist())
"""


def _run_with_backend(flag):
    env = dict(os.environ, DENOMLAB_NUMBA=flag)
    out = subprocess.run([sys.executable, "-c", PARITY_SNIPPET], env=env,
                         capture_output=True, text=True, check=True)
    return out.stdout.splitlines()


def test_backend_parity_bit_identical():
    np_out = _run_with_backend("0")
    nb_out = _run_with_backend("1")
    assert np_out[0] == "numpy" and nb_out[0] == "numba"
    assert np_out[1:] == nb_out[1:]


def test_backend_env_flag():
    assert kernels.BACKEND in ("numpy", "numba")
