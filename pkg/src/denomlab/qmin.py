"""Smallest denominators q_min(x, delta, A).

Three routes:

* a 1D Stern-Brocot style descent whose runtime is the continued-fraction
  length of the interval endpoints,
* an ascending-denominator search in any dimension,
* a brute-force oracle used to cross-check both in tests.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .exactnum import PrimitivePoint, gcd_many
from .regions import QueryRegion, region_bounding_box, region_membership


@dataclass(frozen=True)
class QminAnswer:
    q: int
    witness: PrimitivePoint

    def value(self) -> tuple[Fraction, ...]:
        return self.witness.value()


def _smallest_int_in(lo_n, lo_d, hi_n, hi_d, lo_open, hi_open):
    """Smallest integer in the interval, or None. Endpoints are lo_n/lo_d etc."""
    c = -((-lo_n) // lo_d)  # ceil(lo)
    if lo_open and c * lo_d == lo_n:
        c += 1
    if c * hi_d < hi_n or (not hi_open and c * hi_d == hi_n):
        return c
    return None


def _simplest(lo_n, lo_d, hi_n, hi_d, lo_open, hi_open):
    """Fraction with the smallest denominator in the interval (num, den).

    Classic simplest-fraction descent: after peeling the integer part, the
    answer for the reciprocal interval (with swapped openness) maps back via
    p/q -> q/p. Terminates in O(continued-fraction length).
    """
    # accumulated integer parts a_i: answer = a0 + 1/(a1 + 1/(... + 1/r))
    stack = []
    while True:
        c = _smallest_int_in(lo_n, lo_d, hi_n, hi_d, lo_open, hi_open)
        if c is not None:
            num, den = c, 1
            break
        a = lo_n // lo_d
        lo_n -= a * lo_d
        hi_n -= a * hi_d
        stack.append(a)
        # now 0 <= lo < hi <= 1 with no integer inside; recurse on (1/hi, 1/lo)
        if lo_n == 0:
            # interval is (0, hi): its simplest element is 1/k with k the
            # smallest integer > 1/hi (>= if the upper endpoint is closed);
            # the unwind below applies val -> a + 1/val, so hand it val = k
            k = -((-hi_d) // hi_n)
            if hi_open and k * hi_n == hi_d:
                k += 1
            num, den = k, 1
            break
        lo_n, lo_d, hi_n, hi_d = hi_d, hi_n, lo_d, lo_n
        lo_open, hi_open = hi_open, lo_open
    while stack:
        a = stack.pop()
        num, den = a * num + den, num
    return num, den


def qmin_1d_fast(interval: QueryRegion) -> QminAnswer:
    """Minimal-denominator reduced fraction in a 1D query region.

    When q = 1 admits several integers the smallest one is returned.
    """
    if interval.dim != 1:
        raise ValueError("qmin_1d_fast requires a 1D region")
    (axis,) = region_bounding_box(interval)
    num, den = _simplest(axis.lo.numerator, axis.lo.denominator,
                         axis.hi.numerator, axis.hi.denominator,
                         axis.lo_open, axis.hi_open)
    return QminAnswer(q=den, witness=PrimitivePoint(p=(num,), q=den))


def qmin_cap(r: QueryRegion) -> int:
    """Generous pigeonhole cap on q_min: exceeding it signals a bug."""
    w_min = r.delta * r.base.min_width()
    return 4 * math.ceil(1 / w_min) + 4


def _axis_range(axis, q):
    """Integer candidates p with p/q inside the axis bounds."""
    lo, hi = q * axis.lo, q * axis.hi
    p_lo = -((-lo.numerator) // lo.denominator)  # ceil
    if axis.lo_open and p_lo == lo:
        p_lo += 1
    p_hi = hi.numerator // hi.denominator  # floor
    if axis.hi_open and p_hi == hi:
        p_hi -= 1
    return range(p_lo, p_hi + 1)


def qmin_nd_search(r: QueryRegion) -> QminAnswer:
    """Ascending-denominator search: first q with a primitive p/q in the region.

    Within a fixed q, candidates are visited in lexicographic p order so the
    witness is reproducible.
    """
    bbox = region_bounding_box(r)
    cap = qmin_cap(r)
    for q in range(1, cap + 1):
        ranges = [_axis_range(a, q) for a in bbox]
        if any(len(rg) == 0 for rg in ranges):
            continue
        for p in itertools.product(*ranges):
            if gcd_many((*p, q)) != 1:
                continue
            if region_membership(r, tuple(Fraction(pi, q) for pi in p)):
                return QminAnswer(q=q, witness=PrimitivePoint(p=p, q=q))
    raise RuntimeError(
        f"qmin search cap {cap} exceeded; this is an internal invariant violation"
    )


def qmin_bruteforce_oracle(r: QueryRegion, q_max: int) -> QminAnswer | None:
    """Exhaustive oracle: test every primitive point with q <= q_max.

    Independent of the fast paths: plain per-axis integer enumeration over a
    slightly widened box and a direct membership call per candidate.
    """
    if q_max < 1:
        raise ValueError("q_max must be >= 1")
    bbox = region_bounding_box(r)
    for q in range(1, q_max + 1):
        hits = []
        for p in itertools.product(*[
            range(math.floor(q * a.lo) - 1, math.ceil(q * a.hi) + 2) for a in bbox
        ]):
            if gcd_many((*p, q)) != 1:
                continue
            if region_membership(r, tuple(Fraction(pi, q) for pi in p)):
                hits.append(p)
        if hits:
            return QminAnswer(q=q, witness=PrimitivePoint(p=min(hits), q=q))
    return None
