from fractions import Fraction

import pytest

from denomlab.regions import (
    QueryRegion,
    RegionSpec,
    centered_box,
    region_bounding_box,
    region_membership,
    region_parse,
    region_serialize,
    unit_box,
)

F = Fraction


def test_interval_openness_default():
    spec = region_parse("interval:0,1")
    assert spec.contains((F(0),))
    assert not spec.contains((F(1),))
    assert spec.contains((F(1, 2),))


def test_interval_flags():
    oo = region_parse("interval:-1/2,1/2:oo")
    assert not oo.contains((F(-1, 2),)) and not oo.contains((F(1, 2),))
    cc = region_parse("interval:-1/2,1/2:cc")
    assert cc.contains((F(-1, 2),)) and cc.contains((F(1, 2),))


def test_box_parse_and_membership():
    spec = region_parse("box:0,1;-1,2:cc")
    assert spec.dim == 2
    assert spec.contains((F(1), F(2)))
    assert not spec.contains((F(1), F(5, 2)))


def test_ball_exact_membership():
    spec = region_parse("ball:1/2", dim=2)
    # squared euclidean comparison is exact: (3/10, 4/10) has norm exactly 1/2
    assert spec.contains((F(3, 10), F(4, 10)))
    assert not spec.contains((F(3, 10), F(41, 100)))


def test_ball_with_center():
    spec = region_parse("ball:1@1,1")
    assert spec.contains((F(1), F(2)))
    assert not spec.contains((F(1), F(201, 100)))


def test_serialize_roundtrip():
    for text in ["interval:0,1:co", "interval:-1/2,1/2:oo", "box:0,1;0,1:co",
                 "ball:1/2", "ball:1/3@1/2,1/2"]:
        spec = region_parse(text, dim=2 if text == "ball:1/2" else None)
        again = region_parse(region_serialize(spec))
        assert again == spec


def test_parse_errors():
    for bad in ["interval:1,0", "interval:0,1:xy", "box:", "ball:-1", "wedge:0,1"]:
        with pytest.raises(ValueError):
            region_parse(bad)


def test_query_membership_and_bounding_box():
    q = QueryRegion(unit_box(1), (F(1, 4),), F(1, 2))
    # x + delta*A = [1/4, 3/4)
    assert region_membership(q, (F(1, 4),))
    assert region_membership(q, (F(700, 1000),))
    assert not region_membership(q, (F(3, 4),))
    (axis,) = region_bounding_box(q)
    assert (axis.lo, axis.hi) == (F(1, 4), F(3, 4))


def test_centered_box():
    spec = centered_box(2)
    assert spec.contains((F(0), F(0)))
    assert not spec.contains((F(1, 2), F(0)))
