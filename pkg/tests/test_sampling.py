import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from diskdom.geometry import disk
from diskdom.graphs import build_containment_graph, is_dominating
from diskdom.instances import generate
from diskdom.lp import DiskMultiset, multiplicity, round_to_multiset, solve_lp_relaxation
from diskdom.sampling import (Elements, InfeasibleBucket, SamplingConfig, SamplingTrace, build_sigma,
                              coverage_target, equivalence_classes, iterated_mwds, l_schedule, log_star,
                              selection_probability, uniform_sampling_pass, uniform_sampling_process)

from strategies import disk_lists


def test_log_star_and_schedule():
    assert log_star(65536) == 4
    assert log_star(1) == 0 and log_star(2) == 1 and log_star(16) == 3
    assert l_schedule(65536) == [65536, 16, 4]
    assert l_schedule(2) == []


def test_probability_clamp():
    assert selection_probability(4, 4.0) == 1.0
    assert selection_probability(64, 4.0) == pytest.approx(4 * 6 / 64)
    assert coverage_target(5) == 3


def clique(n):
    return build_containment_graph([disk(i, 0.01 * i, 0, 1) for i in range(n)])


def test_identical_dominators_one_class():
    g = clique(4)
    ms = DiskMultiset((2, 2, 2, 2))
    classes = equivalence_classes(ms, range(4), g, 100)
    assert len(classes) == 1 and classes[0].member_ids == (0, 1, 2, 3)


def test_distinct_dominators_distinct_classes():
    g = build_containment_graph([disk(i, 10 * i, 0, 1) for i in range(3)])
    ms = DiskMultiset((1, 1, 1))
    assert len(equivalence_classes(ms, range(3), g, 100)) == 3


def test_sigma_symmetric_is_reverse_id_order():
    g = clique(3)
    ms = DiskMultiset((1, 1, 1))
    classes = equivalence_classes(ms, range(3), g, 100)
    assert build_sigma(ms, classes, 2) == [2, 1, 0]


def test_sigma_chain_hand_trace():
    # path 0 - 1 - 2 with one copy each: element 1 dominates all three classes,
    # so the end elements leave first and element 1 comes first in sigma
    g = build_containment_graph([disk(0, 0, 0, 1.2), disk(1, 1, 0, 1.2), disk(2, 2, 0, 1.2)])
    ms = DiskMultiset((1, 1, 1))
    classes = equivalence_classes(ms, range(3), g, 100)
    rec = []
    sigma = build_sigma(ms, classes, 2, rec)
    assert sigma == [1, 2, 0]
    assert rec == [(0, 2), (2, 2), (1, 3)]


def test_forced_boundary():
    g = clique(3)
    ms = DiskMultiset((1, 1, 1))
    classes = equivalence_classes(ms, range(3), g, 100)
    # L = 8: target 3 and exactly three dominators, so every element is forced
    cfg = SamplingConfig(c=1.0)
    sel, tr = uniform_sampling_pass(ms, classes, 8, cfg, np.random.default_rng(0))
    assert sel == {0, 1, 2} and sorted(tr.forced) == [0, 1, 2]


def test_infeasible_bucket():
    g = clique(2)
    ms = DiskMultiset((1, 0))
    classes = equivalence_classes(ms, range(2), g, 100)
    with pytest.raises(InfeasibleBucket):
        uniform_sampling_pass(ms, classes, 8, SamplingConfig(), np.random.default_rng(0))


def test_probability_one_selects_all():
    g = clique(3)
    ms = DiskMultiset((2, 2, 2))
    classes = equivalence_classes(ms, range(3), g, 100)
    sel, _ = uniform_sampling_pass(ms, classes, 4, SamplingConfig(c=4.0), np.random.default_rng(1))
    assert sel == set(range(6))


def lp_multiset(n, seed):
    g = generate("mwds", n, density=1.0, seed=seed).containment_graph()
    return g, round_to_multiset(solve_lp_relaxation(g), n)


def test_replay_same_seed():
    g, ms = lp_multiset(24, 3)
    a = uniform_sampling_process(ms, g, 24, SamplingConfig(), np.random.default_rng(7))
    b = uniform_sampling_process(ms, g, 24, SamplingConfig(), np.random.default_rng(7))
    assert a == b


def test_single_bucket_equals_one_pass():
    g = clique(4)
    ms = DiskMultiset((2, 2, 2, 2))  # every multiplicity is 8, so L = 8 is one bucket
    classes = equivalence_classes(ms, range(4), g, 16)
    tr = SamplingTrace(8)
    out = uniform_sampling_process(ms, g, 8, SamplingConfig(c=1.0), np.random.default_rng(5), tr)
    sel, _ = uniform_sampling_pass(ms, classes, 8, SamplingConfig(c=1.0), np.random.default_rng(5))
    assert len(tr.passes) == 1
    assert out == Elements(ms).to_multiset(sel, 4)


def test_process_rejects_underdominated():
    g = clique(2)
    with pytest.raises(ValueError):
        uniform_sampling_process(DiskMultiset((1, 0)), g, 4, SamplingConfig(), np.random.default_rng(0))


@given(st.integers(0, 10**6), st.integers(8, 30))
def test_process_keeps_log_domination(seed, n):
    g, ms = lp_multiset(n, seed % 50)
    out = uniform_sampling_process(ms, g, n, SamplingConfig(), np.random.default_rng(seed))
    assert all(multiplicity(out, g, d) >= math.log2(n) for d in range(n))
    assert all(o <= i for o, i in zip(out.counts, ms.counts))


def test_class_count_bound():
    cfg = SamplingConfig()
    for seed in range(20):
        g, ms = lp_multiset(20, seed)
        L = 20
        classes = equivalence_classes(ms, range(g.n), g, 10**9)
        assert len(classes) <= cfg.c_prime * g.n * L * L


def test_sigma_prefix_degree_bound():
    cfg = SamplingConfig()
    for seed in range(10):
        g, ms = lp_multiset(20, seed)
        L = 20
        classes = equivalence_classes(ms, range(g.n), g, 2 * L)
        rec = []
        build_sigma(ms, classes, L, rec)
        assert max(d for _, d in rec) <= 2 * cfg.c_prime * L ** 3


def test_iterated_single_disk():
    g = build_containment_graph([disk(0, 0, 0, 1, 2)])
    assert iterated_mwds(g) == {0}


@given(disk_lists(max_size=14), st.integers(0, 1000))
def test_iterated_feasible(ds, seed):
    g = build_containment_graph(ds)
    traces = []
    U = iterated_mwds(g, SamplingConfig(seed=seed), traces=traces)
    assert is_dominating(g, U)
    assert len(traces) == len(l_schedule(g.n))
