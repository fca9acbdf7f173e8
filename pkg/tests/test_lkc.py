import math
import warnings

import pytest
from hypothesis import given, settings, strategies as st

from diskdom.geometry import Point, disk, line_dominates
from diskdom.lkc import (LkcInstance, UnderCovered, check_lemma4, compatible, dp_solve, enumerate_tuples,
                         skyline_sequence, startup_cost)
from diskdom.oracles import brute_force_startup_table, exact_lkc

from helpers import lkc_corpus


def three_disk():
    ds = [disk(0, 0, 1, 2.1, 1), disk(1, 2, 1, 2.1, 1), disk(2, 1, 1, 2.3, 1.5)]
    return LkcInstance.create(ds, [Point(0, -1), Point(2, -1)], 1)


def test_three_disk_example():
    res = dp_solve(three_disk())
    assert res.cost == pytest.approx(1.5)
    assert res.chosen == {2}
    assert exact_lkc(three_disk()).optimum == pytest.approx(1.5)


def test_single_point_picks_cheapest_tuple():
    ds = [disk(i, 0.1 * i, 1, 3, w) for i, w in enumerate([4.0, 1.0, 3.0, 2.0])]
    inst = LkcInstance.create(ds, [Point(0, -1)], 2)
    res = dp_solve(inst)
    assert res.cost == pytest.approx(3.0)
    assert res.chosen == {1, 3}


def test_tuple_counts():
    ds = [disk(i, 0.1 * i, 1, 3) for i in range(3)]
    for K, count in [(1, 3), (2, 3), (3, 1)]:
        inst = LkcInstance.create(ds, [Point(0, -1)], K)
        tuples = enumerate_tuples(inst, 0)
        assert len(tuples) == count
        for t in tuples:
            for a, b in zip(t, t[1:]):
                assert line_dominates(ds[a], ds[b], 0)


def test_compatible_examples():
    inst = three_disk()
    for t in enumerate_tuples(inst, 1):
        assert compatible(inst, t, t, 1)
        assert compatible(inst, (inst.m,), t, 1)
    # a lower disk in prev displaces cur's entry at p_2
    ds = [disk(0, 0, 0.5, 3), disk(1, 0, 2, 3.5), disk(2, 8, 1, 1.5)]
    inst = LkcInstance.create(ds, [Point(0, -1), Point(0, -1.2)], 1)
    assert not compatible(inst, (0,), (1,), 1)
    assert compatible(inst, (1,), (0,), 1)


def test_infeasible_errors():
    ds = [disk(0, 0, 1, 1.5)]
    inst = LkcInstance.create(ds, [Point(0, -1), Point(10, -1)], 1)
    with pytest.raises(UnderCovered, match="point under-covered"):
        dp_solve(inst)
    with pytest.raises(UnderCovered):
        exact_lkc(inst)
    with pytest.raises(UnderCovered):
        startup_cost(inst, {0})


def test_create_validates():
    with pytest.raises(ValueError):
        LkcInstance.create([disk(0, 0, -1, 2)], [Point(0, -1)], 1)
    with pytest.raises(ValueError):
        LkcInstance.create([disk(0, 0, 1, 2)], [Point(0, 1)], 1)
    with pytest.raises(ValueError):
        LkcInstance.create([disk(0, 0, 1, 2)], [Point(0, -1)], 0)


def test_startup_and_runs():
    # disk 0 covers everything; disk 1 sits lower in the middle only
    ds = [disk(0, 5, 5.5, 8, 2), disk(1, 5, 0.2, 3, 1)]
    pts = [Point(0, -0.5), Point(5, -0.5), Point(10, -0.5)]
    inst = LkcInstance.create(ds, pts, 1)
    assert startup_cost(inst, {0}) == pytest.approx(2)
    assert check_lemma4(inst, {0}) == {0: 1}
    assert skyline_sequence(inst, {0, 1}) == [(0,), (1,), (0,)]
    assert startup_cost(inst, {0, 1}) == pytest.approx(5)
    assert check_lemma4(inst, {0, 1}) == {0: 2, 1: 1}


def test_unused_disk_has_zero_runs():
    ds = [disk(0, 5, 5, 8, 2), disk(1, 5, 1, 1.5, 1)]
    inst = LkcInstance.create(ds, [Point(0, -1), Point(10, -1)], 1)
    assert check_lemma4(inst, {0, 1})[1] == 0


def test_points_sorted_stably():
    ds = [disk(0, 0, 1, 3)]
    inst = LkcInstance.create(ds, [Point(1, -1), Point(0, -2), Point(1, -0.5)], 1)
    assert [p.x for p in inst.points] == [0, 1, 1]
    assert inst.points[1].y == -1


def test_tuple_warning(monkeypatch):
    import diskdom.lkc as lkc
    monkeypatch.setattr(lkc, "TUPLE_WARN", 1)
    ds = [disk(i, 0.1 * i, 1, 3) for i in range(3)]
    inst = LkcInstance.create(ds, [Point(0, -1)], 1)
    with pytest.warns(UserWarning):
        dp_solve(inst)


CORPUS = lkc_corpus(80, seed0=11)


@pytest.mark.parametrize("inst", CORPUS)
def test_dp_invariants(inst):
    res = dp_solve(inst)
    assert inst.is_kcover(res.chosen)
    assert inst.weight(res.chosen) <= res.cost + 1e-9
    opt = exact_lkc(inst)
    assert res.cost <= 3 * opt.optimum + 1e-9
    # back-pointer chain is monotone and matches the reconstructed sequence
    prefix = [res.table(i)[t] for i, t in enumerate(res.skylines)]
    assert all(a <= b + 1e-12 for a, b in zip(prefix, prefix[1:]))
    assert prefix[-1] == pytest.approx(res.cost)
    # the DP never exceeds the definitional startup table
    table = brute_force_startup_table(inst)
    for i in range(inst.n):
        dp_t = res.table(i)
        for t, c in table[i].items():
            assert dp_t[t] <= c + 1e-9


@pytest.mark.parametrize("inst", CORPUS[:30])
def test_skyline_readings_agree_on_covers(inst):
    opt = exact_lkc(inst)
    assert skyline_sequence(inst, opt.witness) == skyline_sequence(inst, opt.witness, require_cover=True)
