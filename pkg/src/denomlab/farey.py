"""n-dimensional Farey fractions F_Q: streaming enumeration, counting,
sorted 1D traversal, normalization sigma_Q and the torus distance to F_Q.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

import numpy as np

from .analytic import zeta
from .exactnum import PrimitivePoint, gcd_many
from .regions import QueryRegion, region_bounding_box, region_membership


@dataclass(frozen=True)
class FareyLevel:
    n: int
    Q: Fraction  # level; not necessarily an integer

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("dimension must be >= 1")
        if self.Q < 1:
            raise ValueError("level Q must be >= 1")

    @property
    def q_max(self) -> int:
        return int(self.Q)  # floor: denominators are integers <= Q


def sigma_1(n: int) -> float:
    """Normalization constant 1/((n+1) zeta(n+1)); 3/pi^2 in 1D."""
    return 1.0 / ((n + 1) * zeta(n + 1))


def sigma_Q(level: FareyLevel) -> float:
    """Asymptotic count of F_Q: sigma_1 * Q^(n+1)."""
    return sigma_1(level.n) * float(level.Q) ** (level.n + 1)


def iter_farey(level: FareyLevel) -> Iterator[tuple[tuple[int, ...], int]]:
    """Yield every (p, q) with p in [0,q)^n, 1 <= q <= Q, gcd(p..., q) = 1,
    in ascending q then lexicographic p. Streaming, no materialization."""
    n = level.n
    for q in range(1, level.q_max + 1):
        if n == 1:
            # incremental gcd with early exit dominates at large Q
            for p in range(q):
                if math.gcd(p, q) == 1:
                    yield (p,), q
        else:
            for p in itertools.product(range(q), repeat=n):
                g = q
                for pi in p:
                    g = math.gcd(g, pi)
                    if g == 1:
                        break
                if g == 1:
                    yield p, q


def farey_stream_nd(level: FareyLevel, visitor: Callable[[tuple[int, ...], int], None]) -> int:
    """Visit each Farey point exactly once; returns the number of points."""
    count = 0
    for p, q in iter_farey(level):
        visitor(p, q)
        count += 1
    return count


def farey_next_1d(prev: PrimitivePoint, cur: PrimitivePoint, Q: int) -> PrimitivePoint:
    """Next level-Q Farey fraction after the consecutive pair (prev, cur)."""
    if cur.p[0] == cur.q:
        raise ValueError("1/1 is the last level-Q Farey fraction")
    k = (Q + prev.q) // cur.q
    return PrimitivePoint(p=(k * cur.p[0] - prev.p[0],), q=k * cur.q - prev.q)


def farey_1d_floats(Q: int) -> np.ndarray:
    """Sorted float array of F_Q in [0, 1) (1D), via the neighbor recurrence."""
    out = [0.0]
    pp, qp = 0, 1  # 0/1
    pc, qc = 1, Q  # 1/Q
    while pc != qc:
        out.append(pc / qc)
        k = (Q + qp) // qc
        pp, qp, pc, qc = pc, qc, k * pc - pp, k * qc - qp
    return np.asarray(out)


def _jordan_counts(n: int, q_max: int) -> np.ndarray:
    """J_n(q) for q = 1..q_max: the number of p in [0,q)^n with gcd(p,q)=1.

    Sieve over primes: J_n(q) = q^n * prod_{p|q} (1 - p^-n), exact ints.
    """
    j = np.arange(q_max + 1, dtype=object) ** n
    is_comp = np.zeros(q_max + 1, dtype=bool)
    for p in range(2, q_max + 1):
        if is_comp[p]:
            continue
        pn = p**n
        for m in range(p, q_max + 1, p):
            is_comp[m] = m != p
            j[m] = j[m] * (pn - 1) // pn
    return j


def farey_count(level: FareyLevel) -> tuple[int, float]:
    """Exact #F_Q and its ratio to sigma_Q."""
    counts = _jordan_counts(level.n, level.q_max)
    total = int(sum(counts[1:]))
    return total, total / sigma_Q(level)


@dataclass(frozen=True)
class DistanceResult:
    value: float
    exact: Fraction  # the distance itself (sup/l1) or its square (euclidean)
    squared: bool
    nearest: PrimitivePoint


def _axis_torus_dist(x: Fraction, r: Fraction) -> Fraction:
    t = (x - r) % 1
    return min(t, 1 - t)


def farey_distance(x: tuple[Fraction, ...], level: FareyLevel,
                   norm_id: str = "euclidean") -> DistanceResult:
    """Torus distance min over F_Q and Z^n shifts of ||x - r - m||, exactly.

    Euclidean distances are carried as exact squared rationals; sup and l1
    distances are exact rationals. Floats appear only in the reported value.
    """
    if len(x) != level.n:
        raise ValueError("dimension mismatch")
    best = None
    best_pt = None
    for p, q in iter_farey(level):
        d = [_axis_torus_dist(xi, Fraction(pi, q)) for xi, pi in zip(x, p)]
        if norm_id == "sup":
            val = max(d)
        elif norm_id == "l1":
            val = sum(d)
        elif norm_id == "euclidean":
            val = sum(di * di for di in d)
        else:
            raise ValueError(f"unknown norm {norm_id!r}")
        if best is None or val < best:
            best, best_pt = val, PrimitivePoint(p=p, q=q)
    squared = norm_id == "euclidean"
    fval = math.sqrt(best) if squared else float(best)
    return DistanceResult(value=fval, exact=best, squared=squared, nearest=best_pt)


def farey_count_in_query(level: FareyLevel, r: QueryRegion) -> int:
    """Exact #((F_Q + Z^n) intersect (x + delta*A)).

    Counts primitive (p, q), q <= Q, p anywhere in Z^n, with p/q in the query
    region (the Z^n-periodic extension of F_Q). Used as the exact side of the
    void <-> distance and void <-> q_min equivalences.
    """
    bbox = region_bounding_box(r)
    total = 0
    for q in range(1, level.q_max + 1):
        ranges = [
            range(math.floor(q * a.lo) - 1, math.ceil(q * a.hi) + 2) for a in bbox
        ]
        for p in itertools.product(*ranges):
            if gcd_many((*p, q)) != 1:
                continue
            if region_membership(r, tuple(Fraction(pi, q) for pi in p)):
                total += 1
    return total
