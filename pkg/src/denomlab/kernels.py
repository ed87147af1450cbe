"""Hot numeric kernels: numba-jitted inner loops with a pure-numpy fallback.

Backend selection is controlled by the environment variable DENOMLAB_NUMBA:
"1" forces numba (ImportError if unavailable), "0" forces the numpy fallback,
anything else ("auto", unset) uses numba when importable. Both backends are
required to produce bit-identical results; tests enforce parity.

Sample coordinates arriving here are dyadic rationals stored exactly in
float64. Region bounds may be arbitrary floats; the resulting boundary
misclassification has measure zero in the sampled ensembles and the exact
(Fraction-based) APIs remain the ground truth for single queries.
"""
from __future__ import annotations

import math
import os

import numpy as np

__all__ = [
    "BACKEND",
    "box_qmin_batch",
    "box_count_batch",
    "resonance_orders_batch",
]


def _numba_mode() -> str:
    flag = os.environ.get("DENOMLAB_NUMBA", "auto").strip().lower()
    if flag in ("0", "false", "off", "no"):
        return "off"
    if flag in ("1", "true", "on", "yes"):
        return "force"
    return "auto"


# ---------------------------------------------------------------------------
# reference implementations (numpy fallback)
# ---------------------------------------------------------------------------


def _axis_candidates(q, x, lo, hi, lo_open, hi_open):
    """Per-axis integer range [pmin, pmax] for p/q in [x+lo, x+hi) variants."""
    lov = q * (x + lo)
    hiv = q * (x + hi)
    pmin = np.ceil(lov)
    if lo_open:
        pmin = np.where(pmin == lov, pmin + 1.0, pmin)
    pmax = np.floor(hiv)
    if hi_open:
        pmax = np.where(pmax == hiv, pmax - 1.0, pmax)
    return pmin.astype(np.int64), pmax.astype(np.int64)


def _gcd_rows(p: np.ndarray, q: int) -> np.ndarray:
    g = np.full(p.shape[0], q, dtype=np.int64)
    for a in range(p.shape[1]):
        g = np.gcd(g, np.abs(p[:, a]))
    return g


def _slow_box_hits(x, q, lo, hi, lo_open, hi_open, count_all=False):
    """Odometer over all candidate p for one sample; returns hit count."""
    n = x.shape[0]
    pmin = np.empty(n, dtype=np.int64)
    pmax = np.empty(n, dtype=np.int64)
    for a in range(n):
        lov = q * (x[a] + lo[a])
        hiv = q * (x[a] + hi[a])
        lo_i = math.ceil(lov)
        if lo_open[a] and lo_i == lov:
            lo_i += 1
        hi_i = math.floor(hiv)
        if hi_open[a] and hi_i == hiv:
            hi_i -= 1
        if hi_i < lo_i:
            return 0
        pmin[a], pmax[a] = lo_i, hi_i
    hits = 0
    cur = pmin.copy()
    while True:
        g = q
        for a in range(n):
            g = math.gcd(g, abs(int(cur[a])))
        if g == 1:
            if not count_all:
                return 1
            hits += 1
        a = n - 1
        while a >= 0 and cur[a] == pmax[a]:
            cur[a] = pmin[a]
            a -= 1
        if a < 0:
            return hits
        cur[a] += 1


def _np_box_qmin_batch(xs, lo, hi, lo_open, hi_open, q_cap):
    m, n = xs.shape
    out = np.full(m, -1, dtype=np.int64)
    alive = np.arange(m)
    for q in range(1, int(q_cap) + 1):
        if alive.size == 0:
            break
        sub = xs[alive]
        pmins = np.empty((alive.size, n), dtype=np.int64)
        width = np.ones(alive.size, dtype=np.int64)
        feasible = np.ones(alive.size, dtype=bool)
        for a in range(n):
            pmin, pmax = _axis_candidates(q, sub[:, a], lo[a], hi[a],
                                          lo_open[a], hi_open[a])
            feasible &= pmax >= pmin
            pmins[:, a] = pmin
            width *= np.maximum(pmax - pmin + 1, 0)
        single = feasible & (width == 1)
        hit = np.zeros(alive.size, dtype=bool)
        if single.any():
            hit[single] = _gcd_rows(pmins[single], q) == 1
        multi = np.nonzero(feasible & (width > 1))[0]
        for i in multi:
            hit[i] = _slow_box_hits(sub[i], q, lo, hi, lo_open, hi_open) > 0
        out[alive[hit]] = q
        alive = alive[~hit]
    return out


def _np_box_count_batch(xs, lo, hi, lo_open, hi_open, q_max):
    m, n = xs.shape
    counts = np.zeros(m, dtype=np.int64)
    for q in range(1, int(q_max) + 1):
        pmins = np.empty((m, n), dtype=np.int64)
        width = np.ones(m, dtype=np.int64)
        feasible = np.ones(m, dtype=bool)
        for a in range(n):
            pmin, pmax = _axis_candidates(q, xs[:, a], lo[a], hi[a],
                                          lo_open[a], hi_open[a])
            feasible &= pmax >= pmin
            pmins[:, a] = pmin
            width *= np.maximum(pmax - pmin + 1, 0)
        single = feasible & (width == 1)
        if single.any():
            counts[single] += (_gcd_rows(pmins[single], q) == 1).astype(np.int64)
        for i in np.nonzero(feasible & (width > 1))[0]:
            counts[i] += _slow_box_hits(xs[i], q, lo, hi, lo_open, hi_open,
                                        count_all=True)
    return counts


def _canonical_shell(n: int, m: int) -> np.ndarray:
    """Canonical +-p representatives with ||p||_1 = m (first nonzero positive)."""
    pts = []
    cur = np.full(n, -m, dtype=np.int64)

    def first_nonzero_positive(v):
        for x in v:
            if x != 0:
                return x > 0
        return False

    while True:
        if np.abs(cur).sum() == m and first_nonzero_positive(cur):
            pts.append(cur.copy())
        a = n - 1
        while a >= 0 and cur[a] == m:
            cur[a] = -m
            a -= 1
        if a < 0:
            break
        cur[a] += 1
    return np.array(pts, dtype=np.int64).reshape(-1, n)


def _np_resonance_orders_batch(omegas, rho, cap):
    m = omegas.shape[0]
    out = np.full(m, -1, dtype=np.int64)
    alive = np.arange(m)
    rho2 = rho * rho
    for shell in range(1, int(cap) + 1):
        if alive.size == 0:
            break
        P = _canonical_shell(omegas.shape[1], shell)
        # accumulate axis by axis in the same order as the jitted loop so the
        # two backends agree bit for bit
        norms2 = np.zeros(P.shape[0])
        R = np.zeros((alive.size, P.shape[0]))
        for a in range(omegas.shape[1]):
            pa = P[:, a].astype(np.float64)
            norms2 += pa * pa
            R += omegas[alive][:, a:a + 1] * pa
        diff = R - np.rint(R)
        hit = (diff * diff <= rho2 * norms2).any(axis=1)
        out[alive[hit]] = shell
        alive = alive[~hit]
    return out


# ---------------------------------------------------------------------------
# numba implementations
# ---------------------------------------------------------------------------


def _build_numba():
    import numba  # noqa: F401
    from numba import njit

    @njit(cache=True)
    def _gcd(a, b):
        if a < 0:
            a = -a
        if b < 0:
            b = -b
        while b:
            a, b = b, a % b
        return a

    @njit(cache=True)
    def _axis_range(q, x, lo, hi, lo_open, hi_open):
        lov = q * (x + lo)
        hiv = q * (x + hi)
        pmin = np.int64(np.ceil(lov))
        if lo_open and pmin == lov:
            pmin += 1
        pmax = np.int64(np.floor(hiv))
        if hi_open and pmax == hiv:
            pmax -= 1
        return pmin, pmax

    @njit(cache=True)
    def _box_hit(x, q, lo, hi, lo_open, hi_open, count_all):
        n = x.shape[0]
        pmin = np.empty(n, dtype=np.int64)
        pmax = np.empty(n, dtype=np.int64)
        for a in range(n):
            lo_i, hi_i = _axis_range(q, x[a], lo[a], hi[a], lo_open[a], hi_open[a])
            if hi_i < lo_i:
                return 0
            pmin[a] = lo_i
            pmax[a] = hi_i
        hits = 0
        cur = pmin.copy()
        while True:
            g = q
            for a in range(n):
                g = _gcd(g, cur[a])
                if g == 1:
                    break
            if g == 1:
                if not count_all:
                    return 1
                hits += 1
            a = n - 1
            while a >= 0 and cur[a] == pmax[a]:
                cur[a] = pmin[a]
                a -= 1
            if a < 0:
                return hits
            cur[a] += 1

    @njit(cache=True)
    def _nb_box_qmin_batch(xs, lo, hi, lo_open, hi_open, q_cap):
        m = xs.shape[0]
        out = np.full(m, -1, dtype=np.int64)
        for i in range(m):
            for q in range(1, q_cap + 1):
                if _box_hit(xs[i], q, lo, hi, lo_open, hi_open, False) > 0:
                    out[i] = q
                    break
        return out

    @njit(cache=True)
    def _nb_box_count_batch(xs, lo, hi, lo_open, hi_open, q_max):
        m = xs.shape[0]
        counts = np.zeros(m, dtype=np.int64)
        for i in range(m):
            total = 0
            for q in range(1, q_max + 1):
                total += _box_hit(xs[i], q, lo, hi, lo_open, hi_open, True)
            counts[i] = total
        return counts

    @njit(cache=True)
    def _nb_resonance_orders_batch(omegas, rho, cap):
        m, n = omegas.shape
        out = np.full(m, -1, dtype=np.int64)
        rho2 = rho * rho
        for i in range(m):
            found = 0
            for shell in range(1, cap + 1):
                cur = np.full(n, -shell, dtype=np.int64)
                while True:
                    l1 = 0
                    for a in range(n):
                        l1 += abs(cur[a])
                    if l1 == shell:
                        lead = 0
                        for a in range(n):
                            if cur[a] != 0:
                                lead = cur[a]
                                break
                        if lead > 0:
                            r = 0.0
                            n2 = 0.0
                            for a in range(n):
                                r += cur[a] * omegas[i, a]
                                n2 += cur[a] * cur[a]
                            diff = r - np.rint(r)
                            if diff * diff <= rho2 * n2:
                                found = shell
                                break
                    a = n - 1
                    while a >= 0 and cur[a] == shell:
                        cur[a] = -shell
                        a -= 1
                    if a < 0:
                        break
                    cur[a] += 1
                if found:
                    out[i] = found
                    break
        return out

    return _nb_box_qmin_batch, _nb_box_count_batch, _nb_resonance_orders_batch


_mode = _numba_mode()
if _mode == "off":
    BACKEND = "numpy"
else:
    try:
        box_qmin_batch, box_count_batch, resonance_orders_batch = _build_numba()
        BACKEND = "numba"
    except ImportError:
        if _mode == "force":
            raise
        BACKEND = "numpy"

if BACKEND == "numpy":
    box_qmin_batch = _np_box_qmin_batch
    box_count_batch = _np_box_count_batch
    resonance_orders_batch = _np_resonance_orders_batch
