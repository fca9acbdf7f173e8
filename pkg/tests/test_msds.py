import pytest
from hypothesis import given, settings

from diskdom.cover import msds_system
from diskdom.geometry import contains, disk
from diskdom.graphs import build_directed_graph, is_strongly_dominating
from diskdom.msds import (backward_instance, forward_instance, local_search, local_search_cover,
                          local_search_hitting, msds_phases, solve_msds)
from diskdom.oracles import exact_msds

from helpers import swap_optimal
from strategies import disk_lists


def test_forward_examples():
    dg = build_directed_graph([disk(0, 0, 0, 5), disk(1, 3, 0, 1)])
    sys_ = forward_instance(dg).system()
    # range of disk 0 is hit by either center, range of disk 1 only by its own
    assert sys_.servers() == [[0, 1], [1]]
    assert local_search_hitting(forward_instance(build_directed_graph([disk(0, 0, 0, 1)]))) == {0}


def test_backward_examples():
    dg = build_directed_graph([disk(0, 0, 0, 5), disk(1, 3, 0, 1)])
    assert backward_instance(dg).system().servers() == [[0], [0, 1]]


def test_common_point_gives_singleton():
    dg = build_directed_graph([disk(i, 0.1 * i, 0, 2) for i in range(6)])
    assert len(local_search_hitting(forward_instance(dg))) == 1
    assert len(local_search_cover(backward_instance(dg))) == 1


def test_two_cycle():
    dg = build_directed_graph([disk(0, 0, 0, 1), disk(1, 0.5, 0, 1)])
    assert len(solve_msds(dg)) <= 2


def test_local_search_needs_feasible_start():
    dg = build_directed_graph([disk(0, 0, 0, 1), disk(1, 5, 0, 1)])
    with pytest.raises(ValueError):
        local_search(msds_system(dg), 3, start=[0])
    with pytest.raises(ValueError):
        local_search(msds_system(dg), 0)


@given(disk_lists(max_size=10))
def test_system_matches_definitions(ds):
    dg = build_directed_graph(ds)
    fwd, bwd = forward_instance(dg).system(), backward_instance(dg).system()
    for u in range(dg.n):
        for v in range(dg.n):
            assert (v in fwd.serve[u]) == contains(ds[v], ds[u].center)
            assert (v in bwd.serve[u]) == contains(ds[u], ds[v].center)
    joint = msds_system(dg)
    import itertools
    if dg.n <= 6:
        for r in range(dg.n + 1):
            for U in itertools.combinations(range(dg.n), r):
                assert joint.is_feasible(U) == is_strongly_dominating(dg, U)


@settings(max_examples=40)
@given(disk_lists(max_size=9))
def test_phases(ds):
    dg = build_directed_graph(ds)
    res = msds_phases(dg)
    assert is_strongly_dominating(dg, res.solution)
    assert len(res.pruned_union) <= len(res.forward) + len(res.backward)
    assert res.solution <= set(range(dg.n))
    assert len(res.solution) <= len(res.pruned_union)
    # 1-minimal for the hitting side
    hit = forward_instance(dg).system()
    for v in res.forward:
        assert not hit.is_feasible(res.forward - {v})
    assert swap_optimal(dg, res.solution, 3)
    assert exact_msds(dg).optimum <= len(res.solution)
