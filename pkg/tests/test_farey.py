import math
import random
from fractions import Fraction

import numpy as np
import pytest

from denomlab.exactnum import PrimitivePoint, gcd_many
from denomlab.farey import (
    FareyLevel,
    farey_1d_floats,
    farey_count,
    farey_count_in_query,
    farey_distance,
    farey_next_1d,
    iter_farey,
    sigma_1,
    sigma_Q,
)
from denomlab.regions import QueryRegion, region_parse

F = Fraction


def test_small_counts_1d():
    # #F_Q in 1D is sum over q<=Q of phi(q) (phi(1)=1 counts 0/1)
    def phi(q):
        return sum(1 for a in range(1, q + 1) if math.gcd(a, q) == 1)

    for Q in (1, 2, 5, 10, 50):
        count, _ = farey_count(FareyLevel(1, F(Q)))
        assert count == sum(phi(q) for q in range(1, Q + 1))


def test_count_matches_stream():
    for n, Q in [(1, 60), (2, 12), (3, 6)]:
        level = FareyLevel(n, F(Q))
        assert farey_count(level)[0] == sum(1 for _ in iter_farey(level))


def test_stream_is_primitive_and_in_range():
    level = FareyLevel(2, F(8))
    for p, q in iter_farey(level):
        assert 1 <= q <= 8
        assert all(0 <= pi < q for pi in p)
        assert gcd_many(list(p) + [q]) == 1


def test_recurrence_matches_sorted_stream():
    Q = 200
    level = FareyLevel(1, F(Q))
    sorted_pts = sorted(((F(p[0], q), p[0], q) for p, q in iter_farey(level)))
    cur, nxt = PrimitivePoint((0,), 1), PrimitivePoint((1,), Q)
    seq = [cur, nxt]
    while True:
        try:
            cur, nxt = nxt, farey_next_1d(cur, nxt, Q)
        except ValueError:
            break
        seq.append(nxt)
    assert len(seq) == len(sorted_pts) + 1  # recurrence sequence ends at 1/1
    for got, (_, p, q) in zip(seq, sorted_pts):
        assert (got.p[0], got.q) == (p, q)


def test_floats_sorted_and_complete():
    Q = 100
    arr = farey_1d_floats(Q)
    assert np.all(np.diff(arr) > 0)
    assert arr[0] == 0.0 and arr[-1] < 1.0
    assert arr.size == farey_count(FareyLevel(1, F(Q)))[0]


def test_sigma_constants():
    assert sigma_1(1) == pytest.approx(3.0 / math.pi**2, rel=1e-12)
    level = FareyLevel(1, F(1000))
    assert sigma_Q(level) == pytest.approx(3.0 / math.pi**2 * 1000**2, rel=1e-12)


def test_count_ratio_tends_to_one():
    ratios = [farey_count(FareyLevel(2, F(Q)))[1] for Q in (10, 20, 40)]
    assert abs(ratios[-1] - 1.0) < abs(ratios[0] - 1.0)
    assert ratios[-1] == pytest.approx(1.0, abs=0.05)


def test_distance_exactness_1d():
    level = FareyLevel(1, F(10))
    d = farey_distance((F(13, 40),), level, norm_id="sup")
    # nearest Farey fraction to 13/40 with q<=10: 1/3 (|13/40-1/3|=1/120)
    assert d.exact == F(1, 120)
    d2 = farey_distance((F(13, 40),), level, norm_id="euclidean")
    assert d2.squared and d2.exact == F(1, 120) ** 2


def test_distance_upper_bound():
    # dist(x, F_Q) <= 1/Q for sup norm in 1D
    rng = random.Random(3)
    level = FareyLevel(1, F(50))
    for _ in range(200):
        x = F(rng.randint(0, 10**6), 10**6)
        assert farey_distance((x,), level, norm_id="sup").exact <= F(1, 50)


def test_distance_torus_wrap():
    level = FareyLevel(1, F(2))
    d = farey_distance((F(99, 100),), level, norm_id="sup")
    assert d.exact == F(1, 100)  # wraps to 0/1


def test_void_distance_equivalence_exact():
    # no Farey point within closed radius w of x <=> torus distance > w
    rng = random.Random(4)
    for _ in range(150):
        n = rng.choice([1, 2])
        Q = rng.randint(2, 25 if n == 2 else 120)
        level = FareyLevel(n, F(Q))
        x = tuple(F(rng.randint(0, 999), 1000) for _ in range(n))
        w = F(rng.randint(1, 200), 1000)
        query = QueryRegion(region_parse(f"ball:{w}", dim=n), x, F(1))
        k = farey_count_in_query(level, query)
        dist = farey_distance(x, level, norm_id="euclidean")
        assert (k == 0) == (dist.exact > w * w)
