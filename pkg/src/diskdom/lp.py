"""LP relaxation of min-weight domination and the floor(2n x) multiset rounding."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np
from scipy.optimize import linprog
from scipy.sparse import csr_matrix

from .graphs import ContainmentGraph

EPS_LP = 1e-7


@dataclass(frozen=True)
class LpSolution:
    x: tuple[float, ...]
    objective: float


@dataclass(frozen=True)
class DiskMultiset:
    """Copy counts per disk id. Copies are separate elements downstream."""

    counts: tuple[int, ...]

    @classmethod
    def from_mapping(cls, counts: Mapping[int, int], n: int) -> "DiskMultiset":
        return cls(tuple(int(counts.get(i, 0)) for i in range(n)))

    def size(self) -> int:
        return sum(self.counts)

    def support(self) -> frozenset:
        return frozenset(i for i, c in enumerate(self.counts) if c > 0)

    def weight(self, g: ContainmentGraph) -> float:
        return math.fsum(c * g.disks[i].weight for i, c in enumerate(self.counts))


def closed_neighborhood_matrix(g: ContainmentGraph) -> csr_matrix:
    rows, cols = [], []
    for v in range(g.n):
        for a in sorted(g.closed[v]):
            rows.append(v)
            cols.append(a)
    return csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(g.n, g.n))


def solve_lp_relaxation(g: ContainmentGraph) -> LpSolution:
    """Optimal fractional domination, ``sum_{A in N[D]} x_A >= 1`` for all D."""
    if g.n == 0:
        raise ValueError("empty graph")
    A = closed_neighborhood_matrix(g)
    c = np.array([d.weight for d in g.disks])
    res = linprog(c, A_ub=-A, b_ub=-np.ones(g.n), bounds=(0.0, 1.0), method="highs")
    if res.status != 0:
        raise RuntimeError(f"LP solve failed: {res.message}")
    x = np.clip(res.x, 0.0, 1.0)
    slack = A @ x - 1.0
    if slack.min() < -EPS_LP:
        raise RuntimeError(f"LP solution violates coverage by {-slack.min():.3g}")
    xs = tuple(float(v) for v in x)
    return LpSolution(xs, math.fsum(w * v for w, v in zip(c, xs)))


def round_to_multiset(sol: LpSolution, n: int) -> DiskMultiset:
    return DiskMultiset(tuple(int(math.floor(2 * n * v)) for v in sol.x))


def multiplicity(ms: DiskMultiset, g: ContainmentGraph, d: int) -> int:
    return sum(ms.counts[a] for a in g.closed[d])
