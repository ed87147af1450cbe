"""Minimal resonance orders of frequency vectors.

For a frequency vector omega in [0,1)^n and tolerance rho, the resonance
order M(omega, rho) is the smallest l1-norm of a nonzero integer vector p
whose residual |p . omega - q| (q the nearest integer) is at most
rho * ||p||_2.  The exact routine works on Fractions; the scaling experiment
uses the float64 kernel and reports quantiles of rho^(1/(n+1)) * M.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .rng import uniform_dyadic_matrix


def _nearest_int(x: Fraction) -> int:
    """Round to nearest integer, ties to even (matches float rounding)."""
    f = math.floor(x)
    r = x - f
    if r > Fraction(1, 2):
        return f + 1
    if r < Fraction(1, 2):
        return f
    return f if f % 2 == 0 else f + 1


def delta_pq(p: tuple[int, ...], omega: tuple[Fraction, ...]) -> tuple[Fraction, int]:
    """Residual |p . omega - q| with q the nearest integer; exact."""
    dot = sum(pi * wi for pi, wi in zip(p, omega))
    if not isinstance(dot, Fraction):
        dot = Fraction(dot)
    q = _nearest_int(dot)
    return abs(dot - q), q


def _canonical_shell(n: int, m: int):
    """All p with l1-norm m, one representative per {p, -p} pair."""
    def rec(axis, remaining, prefix, leading_zero):
        if axis == n - 1:
            if leading_zero:
                yield prefix + (remaining,)
            else:
                for v in (remaining, -remaining) if remaining else (0,):
                    yield prefix + (v,)
            return
        # larger leading weight first, so shell 1 starts at (1, 0, ..., 0)
        for a in range(remaining, -1, -1):
            if a == 0:
                yield from rec(axis + 1, remaining, prefix + (0,), leading_zero)
            elif leading_zero:
                yield from rec(axis + 1, remaining - a, prefix + (a,), False)
            else:
                yield from rec(axis + 1, remaining - a, prefix + (a,), False)
                yield from rec(axis + 1, remaining - a, prefix + (-a,), False)
    yield from rec(0, m, (), True)


def resonance_cap(n: int, rho: Fraction | float) -> int:
    return 10 * math.ceil(float(rho) ** (-1.0 / (n + 1))) + 10


@dataclass(frozen=True)
class ResonanceAnswer:
    order: int
    witness: tuple[int, ...]
    q: int
    residual: Fraction


def min_resonance_order(omega: tuple[Fraction, ...], rho: Fraction,
                        cap: int | None = None) -> ResonanceAnswer:
    """Smallest l1 order, searched shell by shell with exact arithmetic.

    Within a shell the witness is the first hit in the canonical order
    (first nonzero coordinate positive, lexicographic).
    """
    omega = tuple(Fraction(w) for w in omega)
    rho = Fraction(rho)
    if rho <= 0:
        raise ValueError("rho must be positive")
    n = len(omega)
    cap = cap if cap is not None else resonance_cap(n, rho)
    rho2 = rho * rho
    for m in range(1, cap + 1):
        for p in _canonical_shell(n, m):
            r, q = delta_pq(p, omega)
            norm2 = sum(pi * pi for pi in p)
            # r <= rho ||p||_2, compared via squares to stay exact
            if r * r <= rho2 * norm2:
                return ResonanceAnswer(order=m, witness=p, q=q, residual=r)
    raise RuntimeError(
        f"no resonance of order <= {cap} for omega={omega} at rho={rho}; "
        "the search cap scales like 10 * rho^(-1/(n+1)) + 10 and should "
        "never bind for rho in (0, 1)"
    )


@dataclass(frozen=True)
class ResonanceScalingResult:
    rho_values: np.ndarray
    q10: np.ndarray
    q50: np.ndarray
    q90: np.ndarray
    slope_running: np.ndarray  # log-log slope of the median vs rho
    samples: int
    n: int

    def rows(self):
        return [
            (float(self.rho_values[i]), float(self.q10[i]), float(self.q50[i]),
             float(self.q90[i]),
             "" if np.isnan(self.slope_running[i]) else float(self.slope_running[i]))
            for i in range(self.rho_values.size)
        ]


def resonance_scaling_experiment(n: int, rho_values, samples: int,
                                 seed: int = 0) -> ResonanceScalingResult:
    """Quantiles of the rescaled order rho^(1/(n+1)) M over random omega.

    Sample j of every rho reuses the same omega (index offset j * n), so the
    curves are comparable across rho; the running slope is the discrete
    log-log derivative of the raw median order, expected near -1/(n+1).
    """
    rhos = np.asarray([float(r) for r in rho_values], dtype=np.float64)
    if (rhos <= 0).any():
        raise ValueError("rho values must be positive")
    omegas = uniform_dyadic_matrix(seed, samples, n)
    exp = 1.0 / (n + 1)
    q10 = np.empty(rhos.size)
    q50 = np.empty(rhos.size)
    q90 = np.empty(rhos.size)
    med_raw = np.empty(rhos.size)
    for i, rho in enumerate(rhos):
        cap = resonance_cap(n, rho)
        orders = kernels.resonance_orders_batch(omegas, rho, cap)
        if (orders < 0).any():
            raise RuntimeError(f"resonance search cap {cap} exceeded at rho={rho}")
        med_raw[i] = np.median(orders)
        scaled = rho**exp * orders.astype(np.float64)
        q10[i], q50[i], q90[i] = np.quantile(scaled, [0.1, 0.5, 0.9])
    slope = np.full(rhos.size, np.nan)
    for i in range(1, rhos.size):
        dlog = math.log(rhos[i]) - math.log(rhos[i - 1])
        if dlog != 0 and med_raw[i] > 0 and med_raw[i - 1] > 0:
            slope[i] = (math.log(med_raw[i]) - math.log(med_raw[i - 1])) / dlog
    return ResonanceScalingResult(rho_values=rhos, q10=q10, q50=q50, q90=q90,
                                  slope_running=slope, samples=samples, n=n)
