"""Uniform sampling over a multiset of dominating disks, and the iterated MWDS driver.

Elements of a multiset are numbered disk-major: all copies of disk 0, then
disk 1, and so on. Copies behave as independent elements; a disk is in the
final answer when any of its copies survives.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, asdict
from typing import Optional, Sequence

import numpy as np

from .graphs import ContainmentGraph, is_dominating, prune_redundant
from .lp import DiskMultiset, multiplicity, round_to_multiset, solve_lp_relaxation


class InfeasibleBucket(ValueError):
    pass


@dataclass(frozen=True)
class SamplingConfig:
    c: float = 4.0
    c_prime: float = 32.0
    seed: int = 0
    stop_threshold: int = 2

    def __post_init__(self):
        if self.c < 1:
            raise ValueError("c must be >= 1")
        if self.c_prime <= 0:
            raise ValueError("c_prime must be positive")


@dataclass(frozen=True)
class EquivalenceClass:
    dominator_set: tuple[int, ...]  # element ids
    member_ids: tuple[int, ...]  # target disk ids
    representative: int


@dataclass
class PassTrace:
    L: int
    target: int
    probability: float
    n_classes: int
    n_targets: int
    considered: list[int] = field(default_factory=list)
    forced: list[int] = field(default_factory=list)
    selected: list[int] = field(default_factory=list)


@dataclass
class SamplingTrace:
    L: int
    passes: list[PassTrace] = field(default_factory=list)

    def selected_elements(self) -> set[int]:
        return {e for p in self.passes for e in p.selected}

    def forced_elements(self) -> set[int]:
        return {e for p in self.passes for e in p.forced}

    def to_dict(self) -> dict:
        return asdict(self)


class Elements:
    """Flat view of a multiset: element id -> disk id, and disk -> element range."""

    def __init__(self, ms: DiskMultiset):
        self.offsets = [0]
        for c in ms.counts:
            self.offsets.append(self.offsets[-1] + c)
        self.disk_of = [d for d, c in enumerate(ms.counts) for _ in range(c)]

    def __len__(self) -> int:
        return len(self.disk_of)

    def of_disk(self, d: int) -> range:
        return range(self.offsets[d], self.offsets[d + 1])

    def to_multiset(self, chosen, n: int) -> DiskMultiset:
        counts = [0] * n
        for e in chosen:
            counts[self.disk_of[e]] += 1
        return DiskMultiset(tuple(counts))


def selection_probability(L: int, c: float) -> float:
    return min(1.0, c * math.log2(L) / L)


def coverage_target(L: int) -> int:
    return math.ceil(math.log2(L))


def equivalence_classes(ms: DiskMultiset, targets: Sequence[int], g: ContainmentGraph,
                        max_mult: int) -> list[EquivalenceClass]:
    els = Elements(ms)
    groups: dict[tuple[int, ...], list[int]] = {}
    for a in sorted(set(targets)):
        doms = tuple(e for d in sorted(g.closed[a]) for e in els.of_disk(d))
        if len(doms) > max_mult:
            continue
        groups.setdefault(doms, []).append(a)
    return [EquivalenceClass(k, tuple(v), v[0]) for k, v in sorted(groups.items(), key=lambda kv: kv[1][0])]


def build_sigma(ms: DiskMultiset, classes: Sequence[EquivalenceClass], L: int,
                record: Optional[list] = None) -> list[int]:
    """Smallest-last order of the elements.

    Repeatedly removes the element dominating the fewest live classes (a class
    is live while at most ``2L`` of its dominators remain); ties go to the
    smaller element id. Returns the reversed removal order. If ``record`` is
    given, ``(element, live classes it dominated at removal)`` pairs are
    appended in removal order.
    """
    els = Elements(ms)
    n = len(ms.counts)
    remaining = list(ms.counts)
    next_copy = [els.offsets[d] for d in range(n)]
    disk_classes: list[list[int]] = [[] for _ in range(n)]
    class_disks: list[list[int]] = []
    rem = []
    for ci, cl in enumerate(classes):
        disks = sorted({els.disk_of[e] for e in cl.dominator_set})
        class_disks.append(disks)
        for d in disks:
            disk_classes[d].append(ci)
        rem.append(len(cl.dominator_set))
    live = [r <= 2 * L for r in rem]
    deg = [sum(1 for ci in disk_classes[d] if live[ci]) for d in range(n)]
    removal: list[int] = []
    for _ in range(len(els)):
        best = None
        for d in range(n):
            if remaining[d] and (best is None or deg[d] < deg[best]):
                best = d
        e = next_copy[best]
        next_copy[best] += 1
        remaining[best] -= 1
        removal.append(e)
        if record is not None:
            record.append((e, deg[best]))
        for ci in disk_classes[best]:
            rem[ci] -= 1
            if not live[ci] and rem[ci] <= 2 * L:
                live[ci] = True
                for d in class_disks[ci]:
                    deg[d] += 1
    removal.reverse()
    return removal


def uniform_sampling_pass(ms: DiskMultiset, classes: Sequence[EquivalenceClass], L: int,
                          cfg: SamplingConfig, rng: np.random.Generator) -> tuple[set[int], PassTrace]:
    if L < 2:
        raise ValueError("L must be at least 2")
    target = coverage_target(L)
    p = selection_probability(L, cfg.c)
    for cl in classes:
        if len(cl.dominator_set) < target:
            raise InfeasibleBucket(
                f"infeasible bucket: class {cl.representative} has {len(cl.dominator_set)} < {target} dominators")
    sigma = build_sigma(ms, classes, L)
    element_classes: dict[int, list[int]] = {}
    for ci, cl in enumerate(classes):
        for e in cl.dominator_set:
            element_classes.setdefault(e, []).append(ci)
    later = [len(cl.dominator_set) for cl in classes]
    got = [0] * len(classes)
    trace = PassTrace(L, target, p, len(classes), sum(len(cl.member_ids) for cl in classes))
    selected: set[int] = set()
    for e in sigma:
        mine = element_classes.get(e)
        if not mine:
            continue
        for ci in mine:
            later[ci] -= 1
        trace.considered.append(e)
        forced = any(got[ci] + later[ci] < target for ci in mine)
        if forced:
            trace.forced.append(e)
            take = True
        else:
            take = rng.random() < p
        if take:
            selected.add(e)
            trace.selected.append(e)
            for ci in mine:
                got[ci] += 1
    return selected, trace


def bucket_lower_bounds(max_mult: int, L: int) -> list[int]:
    out = []
    lo = L
    while lo <= max_mult:
        out.append(lo)
        lo *= 2
    return out


def uniform_sampling_process(ms: DiskMultiset, g: ContainmentGraph, L: int, cfg: SamplingConfig,
                             rng: np.random.Generator,
                             trace: Optional[SamplingTrace] = None) -> DiskMultiset:
    """Sparsify an ``L``-dominating multiset.

    Targets are bucketed by multiplicity into ``[L 2^j, L 2^{j+1})``; each
    bucket gets its own pass at ``L_j = L 2^j``. The union of the selections
    ``ceil(log2 L_j)``-dominates every target of bucket ``j``.
    """
    els = Elements(ms)
    mult = [multiplicity(ms, g, a) for a in range(g.n)]
    short = [a for a in range(g.n) if mult[a] < L]
    if short:
        raise ValueError(f"disk {short[0]} is only {mult[short[0]]}-dominated, need {L}")
    chosen: set[int] = set()
    for lo in bucket_lower_bounds(max(mult), L):
        bucket = [a for a in range(g.n) if lo <= mult[a] < 2 * lo]
        if not bucket:
            continue
        classes = equivalence_classes(ms, bucket, g, 2 * lo)
        sel, pt = uniform_sampling_pass(ms, classes, lo, cfg, rng)
        chosen |= sel
        if trace is not None:
            trace.passes.append(pt)
    return els.to_multiset(chosen, g.n)


def log_star(n: int) -> int:
    t = 0
    while n > 1:
        n = n.bit_length() - 1
        t += 1
    return t


def l_schedule(n: int, stop_threshold: int = 2) -> list[int]:
    """``L`` values of the sampling passes that actually run for ``n`` disks."""
    out = []
    L = n
    for _ in range(log_star(n)):
        if L <= stop_threshold:
            break
        out.append(L)
        L = L.bit_length() - 1
    return out


def iterated_mwds(g: ContainmentGraph, cfg: SamplingConfig = SamplingConfig(),
                  rng: Optional[np.random.Generator] = None,
                  traces: Optional[list] = None) -> frozenset:
    if g.n == 0:
        raise ValueError("empty graph")
    if rng is None:
        rng = np.random.default_rng(cfg.seed)
    ms = round_to_multiset(solve_lp_relaxation(g), g.n)
    for L in l_schedule(g.n, cfg.stop_threshold):
        tr = SamplingTrace(L) if traces is not None else None
        ms = uniform_sampling_process(ms, g, L, cfg, rng, tr)
        if tr is not None:
            traces.append(tr)
    support = ms.support()
    return prune_redundant(g, support, lambda U: is_dominating(g, U))
