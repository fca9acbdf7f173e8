"""Disk containment graphs, directed disk graphs and domination checks."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Collection, Iterable, Sequence

from .geometry import Disk, contains


class MalformedInstance(ValueError):
    pass


class InfeasibleSolution(ValueError):
    pass


def _check_ids(disks: Sequence[Disk]) -> None:
    ids = [d.id for d in disks]
    if len(set(ids)) != len(ids) or sorted(ids) != list(range(len(ids))):
        raise MalformedInstance("malformed instance: disk ids must be dense 0..m-1 without duplicates")
    for i, d in enumerate(disks):
        if d.id != i:
            raise MalformedInstance("malformed instance: disks must be listed in id order")


def containment_matrix(disks: Sequence[Disk]) -> list[list[bool]]:
    """``M[u][v]`` is True iff disk u contains the center of disk v (u != v)."""
    m = len(disks)
    return [[u != v and contains(disks[u], disks[v].center) for v in range(m)] for u in range(m)]


@dataclass(frozen=True)
class ContainmentGraph:
    disks: tuple[Disk, ...]
    adjacency: tuple[tuple[int, ...], ...]
    closed: tuple[frozenset, ...] = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.disks)

    def weight(self, ids: Iterable[int]) -> float:
        return math.fsum(self.disks[i].weight for i in sorted(set(ids)))


@dataclass(frozen=True)
class DirectedDiskGraph:
    disks: tuple[Disk, ...]
    out_arcs: tuple[tuple[int, ...], ...]
    in_arcs: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.disks)

    def arc_count(self) -> int:
        return sum(len(a) for a in self.out_arcs)


def build_containment_graph(disks: Sequence[Disk]) -> ContainmentGraph:
    disks = tuple(disks)
    _check_ids(disks)
    cm = containment_matrix(disks)
    m = len(disks)
    adj = tuple(tuple(v for v in range(m) if cm[u][v] and cm[v][u]) for u in range(m))
    closed = tuple(frozenset(adj[u]) | {u} for u in range(m))
    return ContainmentGraph(disks, adj, closed)


def build_directed_graph(disks: Sequence[Disk]) -> DirectedDiskGraph:
    disks = tuple(disks)
    _check_ids(disks)
    cm = containment_matrix(disks)
    m = len(disks)
    out_arcs = tuple(tuple(v for v in range(m) if cm[u][v]) for u in range(m))
    in_arcs = tuple(tuple(u for u in range(m) if cm[u][v]) for v in range(m))
    return DirectedDiskGraph(disks, out_arcs, in_arcs)


def is_dominating(g: ContainmentGraph, U: Collection[int]) -> bool:
    U = set(U)
    return all(not g.closed[v].isdisjoint(U) for v in range(g.n))


def is_strongly_dominating(g: DirectedDiskGraph, U: Collection[int]) -> bool:
    U = set(U)
    for v in range(g.n):
        if v in U:
            continue
        if U.isdisjoint(g.out_arcs[v]) or U.isdisjoint(g.in_arcs[v]):
            return False
    return True


def prune_redundant(g, U: Iterable[int], feasible: Callable[[set], bool]) -> frozenset:
    """Drop members of ``U`` one at a time while ``feasible`` still holds.

    Candidates are tried heaviest first (ties: larger id first). One pass is
    enough because every feasibility predicate used here is monotone.
    """
    current = set(U)
    if not feasible(current):
        raise InfeasibleSolution("not a feasible solution")
    order = sorted(current, key=lambda i: (-g.disks[i].weight, -i))
    for i in order:
        current.discard(i)
        if not feasible(current):
            current.add(i)
    return frozenset(current)


def is_restricted_dominating(g: ContainmentGraph, R: Collection[int]) -> bool:
    R = set(R)
    disks = g.disks
    for v in range(g.n):
        if v in R:
            continue
        if not any(disks[u].radius >= disks[v].radius for u in g.adjacency[v] if u in R):
            return False
    return True


def _restricted_ok(g: ContainmentGraph, v: int, R: set) -> bool:
    if v in R:
        return True
    rv = g.disks[v].radius
    return any(u in R and g.disks[u].radius >= rv for u in g.adjacency[v])


def restriction_blocks(g: ContainmentGraph, U: Collection[int]) -> dict[int, frozenset]:
    """Per-dominator additions that turn a dominating set into a restricted one.

    For each ``u`` in ``U`` (increasing id), ``V_u`` holds the nodes inside
    ``D_u`` with radius at least ``r_u`` that are not yet restricted-dominated
    by what has been chosen so far. ``R_u`` starts from a largest-radius-first
    greedy pick over ``V_u`` (picked nodes are pairwise non-adjacent, so at
    most five of them fit around ``u``) and is then thinned by the
    smallest-radius-first deletion loop.
    """
    if not is_dominating(g, U):
        raise InfeasibleSolution("not a feasible solution: input is not dominating")
    disks = g.disks
    R = set(U)
    blocks: dict[int, frozenset] = {}
    for u in sorted(set(U)):
        du = disks[u]
        V_u = [
            v for v in range(g.n)
            if disks[v].radius >= du.radius and contains(du, disks[v].center) and not _restricted_ok(g, v, R)
        ]
        picked: set = set()
        for v in sorted(V_u, key=lambda v: (-disks[v].radius, v)):
            if not _restricted_ok(g, v, R | picked):
                picked.add(v)
        for v in sorted(picked, key=lambda v: (disks[v].radius, v)):
            trial = R | (picked - {v})
            if all(_restricted_ok(g, z, trial) for z in V_u):
                picked.discard(v)
        blocks[u] = frozenset(picked)
        R |= picked
    return blocks


def restrict_dominating_set(g: ContainmentGraph, U: Collection[int]) -> frozenset:
    blocks = restriction_blocks(g, U)
    R = set(U)
    for b in blocks.values():
        R |= b
    return frozenset(R)
