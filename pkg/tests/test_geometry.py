import math

import pytest
from hypothesis import given, strategies as st

from diskdom.geometry import (DUMMY, Point, chord_low, contains, disk, dominance_key, intersects_line,
                              line_dominates, skyline, sort_by_dominance)

from strategies import coord, radius


def test_contains_examples():
    d = disk(0, 0, 0, 1)
    assert contains(d, Point(0, 0))
    assert contains(d, Point(1, 0))
    assert not contains(d, Point(1.0000001, 0))


def test_chord_low_examples():
    d = disk(0, 0, 1, 2)
    assert chord_low(d, 0) == -1
    assert chord_low(d, 3) is None
    assert chord_low(d, 2) == 1
    assert chord_low(DUMMY, 123.0) == math.inf


def test_line_dominates_examples():
    assert line_dominates(disk(0, 0, 1, 2), disk(1, 5, 1, 2), 0)
    assert line_dominates(disk(0, 0, 1, 2), disk(1, 0, 2, 2), 0)
    assert line_dominates(disk(0, 0, 1, 2), DUMMY, 0)
    assert not line_dominates(DUMMY, disk(0, 0, 1, 2), 0)


def test_line_dominates_off_line():
    with pytest.raises(ValueError, match="dominator off line"):
        line_dominates(disk(0, 5, 1, 2), disk(1, 0, 1, 2), 0)


def test_tie_on_chord_breaks_by_center_then_id():
    # same chord low at x=0, mirrored centers
    a, b = disk(0, -1, 0, 2), disk(1, 1, 0, 2)
    assert line_dominates(a, b, 0) and not line_dominates(b, a, 0)
    c = disk(2, -1, 0, 2)
    assert line_dominates(a, c, 0) and not line_dominates(c, a, 0)


def test_invalid_disks_rejected():
    with pytest.raises(ValueError):
        disk(0, 0, 0, 0)
    with pytest.raises(ValueError):
        disk(0, 0, 0, 1, -1)
    with pytest.raises(ValueError):
        Point(math.nan, 0)


def test_skyline_orders_and_filters():
    ds = [disk(0, 0, 1, 2), disk(1, 0, 0.5, 2), disk(2, 10, 0, 1), disk(3, 0, 3, 1)]
    assert skyline(ds, Point(0, -1), 2) == (1, 0)
    assert skyline(ds, Point(0, -1), 5) == (1, 0, 3)
    # disk 3 crosses the line but does not contain the point
    assert skyline(ds, Point(0, -1), 5, require_cover=True) == (1, 0)


@given(coord, coord, radius, coord)
def test_line_hit_iff_chord(x, y, r, xl):
    d = disk(0, x, y, r)
    assert (chord_low(d, xl) is not None) == intersects_line(d, xl)


@given(st.lists(st.tuples(coord, coord, radius), min_size=2, max_size=6), coord)
def test_dominance_is_strict_total_order(specs, xl):
    ds = [disk(i, x, y, r) for i, (x, y, r) in enumerate(specs)]
    on = [d for d in ds if intersects_line(d, xl)]
    for a in on:
        assert not line_dominates(a, a, xl)
        for b in on:
            if a is not b:
                assert line_dominates(a, b, xl) != line_dominates(b, a, xl)
                for c in on:
                    if line_dominates(a, b, xl) and line_dominates(b, c, xl):
                        assert line_dominates(a, c, xl)
    order = sort_by_dominance(on, xl)
    for a, b in zip(order, order[1:]):
        assert line_dominates(a, b, xl)


@given(coord, coord, radius, coord, coord, st.floats(0, 2 * math.pi), coord, coord)
def test_contains_is_metric_only(x, y, r, px, py, theta, tx, ty):
    d = disk(0, x, y, r)
    p = Point(px, py)
    dist = math.hypot(px - x, py - y)
    if abs(dist - r) < 1e-6 * max(1.0, r):
        return  # boundary: rounding may move it either way
    c, s = math.cos(theta), math.sin(theta)

    def move(u, v):
        return c * u - s * v + tx, s * u + c * v + ty

    cx, cy = move(x, y)
    qx, qy = move(px, py)
    assert contains(d, p) == contains(disk(0, cx, cy, r), Point(qx, qy))


def test_dominance_key_ordering_of_sentinels():
    real = disk(0, 0, 1e6, 1)
    miss = disk(1, 50, 0, 1)
    assert dominance_key(real, 0) < dominance_key(DUMMY, 0) < dominance_key(miss, 0)
