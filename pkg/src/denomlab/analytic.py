"""Closed-form limit laws: the gap law H(s), the smallest-denominator density
eta(s), its moment function M(alpha), and the L <-> s scaling conversions.
"""
from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

from scipy.integrate import IntegrationWarning, quad

PI2 = math.pi**2
ETA_TAIL_COEFF = 12.0 / PI2  # eta(s) ~ (12/pi^2) s^-3 for large s
S_TAIL = 1.0e4  # beyond this the tail model has a closed-form antiderivative
EPS_ALPHA = 1.0e-3  # closed form is a 0/0 cancellation near alpha = 0


def zeta(s: float, terms: int = 24) -> float:
    """zeta(s) for real s >= 2 by direct series with Euler-Maclaurin tail.

    Accurate to ~14 digits for the small integer arguments we need.
    """
    if s < 2:
        raise ValueError("zeta implemented for s >= 2 only")
    k = float(terms)
    total = sum(j ** (-s) for j in range(1, terms))
    # Euler-Maclaurin correction at K = terms
    total += k ** (1 - s) / (s - 1) + 0.5 * k ** (-s)
    total += s * k ** (-s - 1) / 12.0
    total -= s * (s + 1) * (s + 2) * k ** (-s - 3) / 720.0
    total += s * (s + 1) * (s + 2) * (s + 3) * (s + 4) * k ** (-s - 5) / 30240.0
    return total


@dataclass(frozen=True)
class HallEval:
    s: float
    t: float
    value: float
    branch: str  # "t>=1" | "1/4<=t<=1" | "t<=1/4"


def hall_H(s: float) -> HallEval:
    """The three-branch gap law, with shorthand t = (pi^2 s / 3)^-1.

    Branch points are evaluated by the lower-index branch; continuity makes
    the choice observationally irrelevant (and tests enforce it).
    """
    if s < 0:
        raise ValueError("s must be nonnegative")
    t = math.inf if s == 0 else 3.0 / (PI2 * s)
    if t >= 1.0:
        return HallEval(s=s, t=t, value=1.0, branch="t>=1")
    if t >= 0.25:
        return HallEval(s=s, t=t, value=-1.0 + 2.0 * t - 2.0 * t * math.log(t),
                        branch="1/4<=t<=1")
    root = math.sqrt(0.25 - t)
    # cancellation-free: 2*root - 1 = -2t/(root + 1/2), log(1/2 + root) = log1p(...)
    v = -2.0 * t / (root + 0.5) + 2.0 * t - 4.0 * t * math.log1p(-t / (root + 0.5))
    return HallEval(s=s, t=t, value=v, branch="t<=1/4")


def eta_density(s: float) -> float:
    """Limit density of the rescaled smallest denominator (1D).

    Piecewise closed form with breakpoints at s = 1 and s = 2; equals
    (6/pi^2) s H(3 s^2 / pi^2) identically.
    """
    if s < 0:
        raise ValueError("s must be nonnegative")
    c = 6.0 / PI2
    if s <= 1.0:
        return c * s
    if s <= 2.0:
        return c * (-s + 2.0 / s + 4.0 * math.log(s) / s)
    u = s**-2
    root = math.sqrt(0.25 - u)
    # cancellation-free: -s + 2s*root = -4/(s*(2*root+1)), log(1/2+root) = log1p(...)
    return c * (-4.0 / (s * (2.0 * root + 1.0)) + 2.0 / s
                - 4.0 * math.log1p(-u / (root + 0.5)) / s)


def _eta_survival_tail(L: float) -> float:
    # integral of the tail model (12/pi^2)(s^-3 + s^-5) from L to infinity
    return ETA_TAIL_COEFF * (0.5 / L**2 + 0.25 / L**4)


def eta_survival(L: float) -> float:
    """Model survival function E(L) = integral of eta over (L, infinity)."""
    if L <= 0:
        return 1.0
    if L >= S_TAIL:
        return _eta_survival_tail(L)
    total = _eta_survival_tail(S_TAIL)
    for a, b in _segments(L, S_TAIL):
        total += quad(eta_density, a, b, limit=200)[0]
    return total


def eta_cdf(L: float) -> float:
    return 1.0 - eta_survival(L)


def _segments(a: float, b: float):
    """Split [a, b] at the eta breakpoints 1 and 2 (and a log-spaced tail)."""
    cuts = [a] + [c for c in (1.0, 2.0, 10.0, 100.0, 1000.0) if a < c < b] + [b]
    return list(zip(cuts[:-1], cuts[1:]))


# ---------------------------------------------------------------------------
# complex log-gamma (Lanczos) and the beta function
# ---------------------------------------------------------------------------

_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


def complex_log_gamma(z: complex) -> complex:
    """Principal-branch log Gamma.

    Lanczos for Re z >= 1/2; the recurrence log G(z) = log G(z+k) - sum log(z+i)
    otherwise (which stays on the principal branch on the strip we care about).
    """
    z = complex(z)
    if z.imag == 0 and z.real <= 0 and z.real == int(z.real):
        raise ValueError(f"log-gamma pole at {z}")
    if z.real < 0.5:
        k = int(math.ceil(0.5 - z.real))
        shift = sum(cmath.log(z + i) for i in range(k))
        return complex_log_gamma(z + k) - shift
    zz = z - 1.0
    x = complex(_LANCZOS[0])
    for i, c in enumerate(_LANCZOS[1:], start=1):
        x += c / (zz + i)
    t = zz + _LANCZOS_G + 0.5
    out = (zz + 0.5) * cmath.log(t) - t + _HALF_LOG_2PI + cmath.log(x)
    if z.imag == 0:
        out = complex(out.real, 0.0)
    return out


def reciprocal_gamma(z: complex) -> complex:
    """1/Gamma(z), entire: exactly 0 at nonpositive integers."""
    z = complex(z)
    k = max(0, int(math.ceil(2.0 - z.real)))
    prod = complex(1.0)
    for i in range(k):
        prod *= z + i
    return prod * cmath.exp(-complex_log_gamma(z + k))


def beta_fn(x: complex, y: complex) -> complex:
    """Euler beta B(x, y) = Gamma(x) Gamma(y) / Gamma(x + y).

    Poles of the denominator are absorbed through the entire 1/Gamma, so the
    value degrades gracefully to zero where Gamma(x + y) blows up.
    """
    return cmath.exp(complex_log_gamma(x) + complex_log_gamma(y)) * reciprocal_gamma(x + y)


# ---------------------------------------------------------------------------
# the moment function M(alpha)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MomentEval:
    alpha: complex
    value: complex
    method: str  # "closed-form" | "quadrature"


def _check_moment_domain(alpha: complex) -> complex:
    alpha = complex(alpha)
    if abs(alpha.real) >= 2.0:
        raise ValueError("moment diverges: |Re alpha| must be < 2")
    return alpha


def moment_M_closed(alpha: complex) -> MomentEval:
    """M(alpha) = 24/(pi^2 a (a+2)) * (2/a + 2^a B(-a/2, 1/2)).

    Near alpha = 0 the closed form is a removable 0/0; delegate to quadrature.
    """
    alpha = _check_moment_domain(alpha)
    if abs(alpha) < EPS_ALPHA:
        return MomentEval(alpha=alpha, value=moment_M_quadrature(alpha).value,
                          method="quadrature")
    b = beta_fn(-alpha / 2.0, 0.5)
    value = 24.0 / (PI2 * alpha * (alpha + 2.0)) * (2.0 / alpha + 2.0**alpha * b)
    if alpha.imag == 0:
        value = complex(value.real, 0.0)
    return MomentEval(alpha=alpha, value=value, method="closed-form")


def moment_M_quadrature(alpha: complex) -> MomentEval:
    """M(alpha) = integral of s^alpha eta(s) over (0, infinity), numerically.

    Adaptive quadrature split at the breakpoints plus a closed-form tail using
    eta ~ (12/pi^2) s^-3 beyond S_TAIL; absolute error target 1e-9.
    """
    alpha = _check_moment_domain(alpha)
    total = complex(0.0)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        for a, b in _segments(0.0, S_TAIL):
            re = quad(lambda s: (s**alpha * eta_density(s)).real, a, b,
                      limit=400, epsabs=1e-11, epsrel=1e-11)[0]
            im = quad(lambda s: (s**alpha * eta_density(s)).imag, a, b,
                      limit=400, epsabs=1e-11, epsrel=1e-11)[0]
            total += complex(re, im)
    # integral of (12/pi^2)(s^(alpha-3) + s^(alpha-5)) from S_TAIL to infinity
    total += ETA_TAIL_COEFF * (S_TAIL ** (alpha - 2.0) / (2.0 - alpha)
                               + S_TAIL ** (alpha - 4.0) / (4.0 - alpha))
    if alpha.imag == 0:
        total = complex(total.real, 0.0)
    return MomentEval(alpha=alpha, value=total, method="quadrature")


# ---------------------------------------------------------------------------
# scaling between q_min thresholds L and rescaled void sizes s
# ---------------------------------------------------------------------------


def scale_L_to_s(L: float, n: int) -> float:
    """s = sigma_1^(1/n) L^(1+1/n)."""
    if L <= 0:
        raise ValueError("L must be positive")
    s1 = 1.0 / ((n + 1) * zeta(n + 1))
    return s1 ** (1.0 / n) * L ** (1.0 + 1.0 / n)


def scale_s_to_L(s: float, n: int) -> float:
    """Inverse map: L = sigma_1^(-1/(n+1)) s^(n/(n+1))."""
    if s <= 0:
        raise ValueError("s must be positive")
    s1 = 1.0 / ((n + 1) * zeta(n + 1))
    return s1 ** (-1.0 / (n + 1)) * s ** (n / (n + 1.0))
