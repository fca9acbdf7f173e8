"""Generic multicover view: choices serve constraints, each constraint has a demand."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Collection, Sequence

from .geometry import contains
from .graphs import ContainmentGraph, DirectedDiskGraph


@dataclass(frozen=True)
class SetSystem:
    serve: tuple[tuple[int, ...], ...]  # choice -> constraints it serves
    demand: tuple[int, ...]
    weights: tuple[float, ...]

    @property
    def n_choices(self) -> int:
        return len(self.serve)

    @property
    def n_constraints(self) -> int:
        return len(self.demand)

    def masks(self) -> list[int]:
        out = []
        for s in self.serve:
            m = 0
            for r in s:
                m |= 1 << r
            out.append(m)
        return out

    def servers(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in self.demand]
        for j, s in enumerate(self.serve):
            for r in s:
                out[r].append(j)
        return out

    def is_feasible(self, chosen: Collection[int]) -> bool:
        count = [0] * self.n_constraints
        for j in set(chosen):
            for r in self.serve[j]:
                count[r] += 1
        return all(c >= d for c, d in zip(count, self.demand))


def mwds_system(g: ContainmentGraph) -> SetSystem:
    return SetSystem(tuple(tuple(sorted(g.closed[u])) for u in range(g.n)), (1,) * g.n,
                     tuple(d.weight for d in g.disks))


def msds_system(dg: DirectedDiskGraph) -> SetSystem:
    """Constraint ``v`` asks for an out-neighbour of ``v`` (or ``v``) in U,
    constraint ``n + v`` for an in-neighbour (or ``v``). Unit weights."""
    n = dg.n
    serve = []
    for u in range(n):
        fwd = {u} | set(dg.in_arcs[u])  # u serves v's forward need when v -> u
        bwd = {u} | set(dg.out_arcs[u])  # and v's backward need when u -> v
        serve.append(tuple(sorted(fwd) + sorted(n + v for v in bwd)))
    return SetSystem(tuple(serve), (1,) * (2 * n), (1.0,) * n)


def kcover_system(disks: Sequence, points: Sequence, K: int) -> SetSystem:
    serve = tuple(tuple(i for i, p in enumerate(points) if contains(d, p)) for d in disks)
    return SetSystem(serve, (K,) * len(points), tuple(d.weight for d in disks))
