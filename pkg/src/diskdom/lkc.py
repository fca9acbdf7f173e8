"""Weighted linear K-cover by a left-to-right skyline dynamic program.

Points sit on or below ``y = 0`` and disk centers strictly above it. Points are
processed by increasing x (ties keep input order). Indices ``i`` below are
0-based positions in that order.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from itertools import combinations
from typing import Collection, Optional, Sequence

import numpy as np

from . import kernels
from .geometry import Disk, Point, contains, dominance_key, intersects_line, skyline
from .graphs import MalformedInstance, _check_ids

TUPLE_WARN = 100_000


class UnderCovered(ValueError):
    pass


@dataclass(frozen=True)
class LkcInstance:
    disks: tuple[Disk, ...]
    points: tuple[Point, ...]
    K: int
    order: tuple[int, ...] = field(default=(), compare=False)

    @classmethod
    def create(cls, disks: Sequence[Disk], points: Sequence[Point], K: int) -> "LkcInstance":
        disks = tuple(disks)
        _check_ids(disks)
        if K < 1:
            raise MalformedInstance("K must be a positive integer")
        for d in disks:
            if not d.center.y > 0:
                raise MalformedInstance(f"disk {d.id}: center must lie strictly above y = 0")
        for p in points:
            if p.y > 0:
                raise MalformedInstance(f"point ({p.x}, {p.y}) must lie on or below y = 0")
        order = tuple(sorted(range(len(points)), key=lambda j: points[j].x))
        return cls(disks, tuple(points[j] for j in order), int(K), order)

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def m(self) -> int:
        return len(self.disks)

    def covering(self, i: int) -> list[int]:
        p = self.points[i]
        return [d.id for d in self.disks if contains(d, p)]

    def coverage(self, cover: Collection[int]) -> list[int]:
        cover = set(cover)
        return [sum(1 for d in cover if contains(self.disks[d], p)) for p in self.points]

    def is_kcover(self, cover: Collection[int]) -> bool:
        return all(c >= self.K for c in self.coverage(cover))

    def check_feasible(self) -> None:
        for i in range(self.n):
            if len(self.covering(i)) < self.K:
                p = self.points[i]
                raise UnderCovered(f"point under-covered: ({p.x}, {p.y}) lies in fewer than {self.K} disks")

    def weight(self, ids: Collection[int]) -> float:
        return math.fsum(self.disks[d].weight for d in set(ids))


def enumerate_tuples(inst: LkcInstance, i: int) -> list[tuple[int, ...]]:
    """All K-subsets of the disks covering point ``i``, each in dominance order."""
    x = inst.points[i].x
    out = []
    for combo in combinations(inst.covering(i), inst.K):
        out.append(tuple(sorted(combo, key=lambda d: dominance_key(inst.disks[d], x))))
    return out


def _key(inst: LkcInstance, d: int, x: float) -> tuple:
    if d < 0 or d >= inst.m:  # dummy
        return (math.inf, 2, 0, 0)
    return dominance_key(inst.disks[d], x)


def compatible(inst: LkcInstance, prev: Sequence[int], cur: Sequence[int], i: int) -> bool:
    """True iff ``cur`` is exactly the K lowest disks of ``prev`` + ``cur`` at point ``i``."""
    x = inst.points[i].x
    pool = sorted(set(prev) | set(cur), key=lambda d: _key(inst, d, x))
    return tuple(pool[: inst.K]) == tuple(cur)


def line_ranks(inst: LkcInstance, i: int) -> list[int]:
    """Dominance rank of every disk at point ``i``; the last slot is the dummy."""
    x = inst.points[i].x
    m = inst.m
    crossing = sorted((d for d in inst.disks if intersects_line(d, x)), key=lambda d: dominance_key(d, x))
    rank = [m + 1] * (m + 1)
    for r, d in enumerate(crossing):
        rank[d.id] = r
    rank[m] = m + 2
    return rank


@dataclass
class DpResult:
    cost: float
    chosen: frozenset
    skylines: list[tuple[int, ...]]
    layers: list[list[tuple[int, ...]]] = field(repr=False, default_factory=list)
    costs: list[np.ndarray] = field(repr=False, default_factory=list)

    def table(self, i: int) -> dict[tuple[int, ...], float]:
        return {t: float(c) for t, c in zip(self.layers[i], self.costs[i])}


def dp_solve(inst: LkcInstance, backend: Optional[str] = None) -> DpResult:
    inst.check_feasible()
    K, m = inst.K, inst.m
    weights = [d.weight for d in inst.disks] + [0.0]
    prev = [(m,) * K]
    prev_cost = np.zeros(1)
    layers, costs, args = [], [], []
    for i in range(inst.n):
        cur = enumerate_tuples(inst, i)
        if len(cur) > TUPLE_WARN:
            warnings.warn(f"point {i}: {len(cur)} skyline tuples; the DP is quadratic in this count")
        best, arg = kernels.lkc_relax(prev, prev_cost, cur, line_ranks(inst, i), weights, backend=backend)
        layers.append(cur)
        costs.append(best)
        args.append(arg)
        prev, prev_cost = cur, best
    last = costs[-1]
    j = int(np.argmin(last)) if len(last) else -1
    if j < 0 or not math.isfinite(last[j]):
        raise UnderCovered("point under-covered: no feasible skyline sequence")
    seq = []
    for i in range(inst.n - 1, -1, -1):
        seq.append(layers[i][j])
        j = int(args[i][j])
    seq.reverse()
    chosen = frozenset(d for t in seq for d in t)
    return DpResult(float(last.min()), chosen, seq, layers, costs)


def skyline_sequence(inst: LkcInstance, cover: Collection[int], require_cover: bool = False) -> list[tuple[int, ...]]:
    disks = [inst.disks[d] for d in sorted(set(cover))]
    return [skyline(disks, p, inst.K, require_cover) for p in inst.points]


def startup_cost(inst: LkcInstance, cover: Collection[int], require_cover: bool = False) -> float:
    """Sweep cost charging a disk's weight every time it (re)enters the skyline."""
    if not inst.is_kcover(cover):
        raise UnderCovered("not a K-cover of the points")
    total = 0.0
    before: tuple = ()
    for sky in skyline_sequence(inst, cover, require_cover):
        total += sum(inst.disks[d].weight for d in sky if d not in before)
        before = sky
    return total


def check_lemma4(inst: LkcInstance, cover: Collection[int], require_cover: bool = False) -> dict[int, int]:
    """Maximal runs of skyline membership per disk of ``cover``."""
    runs = {d: 0 for d in set(cover)}
    before: tuple = ()
    for sky in skyline_sequence(inst, cover, require_cover):
        for d in sky:
            if d not in before:
                runs[d] += 1
        before = sky
    return runs
