"""Exact exponential-time solvers used as ground truth for ratio measurements."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Optional

from . import kernels
from .cover import SetSystem, kcover_system, msds_system, mwds_system
from .graphs import ContainmentGraph, DirectedDiskGraph
from .lkc import LkcInstance, UnderCovered, skyline_sequence

MWDS_CAP = 20
MSDS_CAP = 20
LKC_CAP = 22
TOL = 1e-9


class OracleRefused(RuntimeError):
    pass


@dataclass(frozen=True)
class OracleResult:
    optimum: float
    witness: frozenset
    nodes_explored: int
    time: float


def branch_and_bound(system: SetSystem) -> tuple[float, frozenset, int]:
    """Min-weight multicover by include/exclude branching over choices sorted by weight.

    A node is cut when some constraint cannot reach its demand from the
    undecided choices, or when the current weight plus
    ``ceil(total deficit / best single gain) * cheapest undecided weight``
    cannot beat the incumbent by more than ``TOL``.
    """
    order = sorted(range(system.n_choices), key=lambda j: (system.weights[j], j))
    serve = [system.serve[j] for j in order]
    w = [system.weights[j] for j in order]
    deficit = list(system.demand)
    avail = [0] * system.n_constraints
    for s in serve:
        for r in s:
            avail[r] += 1
    if any(d > a for d, a in zip(deficit, avail)):
        return math.inf, frozenset(), 1
    best_w = math.inf
    best: list[int] = []
    chosen: list[int] = []
    nodes = 0
    m = len(order)

    def lower_bound(pos: int) -> float:
        total = sum(d for d in deficit if d > 0)
        if total == 0:
            return 0.0
        gain = 0
        for j in range(pos, m):
            g = sum(1 for r in serve[j] if deficit[r] > 0)
            if g > gain:
                gain = g
        if gain == 0:
            return math.inf
        return math.ceil(total / gain) * w[pos]

    def visit(pos: int, cur_w: float) -> None:
        nonlocal best_w, best, nodes
        nodes += 1
        if all(d <= 0 for d in deficit):
            if cur_w < best_w - TOL:
                best_w = cur_w
                best = list(chosen)
            return
        if pos == m or cur_w + lower_bound(pos) >= best_w - TOL:
            return
        s = serve[pos]
        # include
        for r in s:
            deficit[r] -= 1
            avail[r] -= 1
        chosen.append(pos)
        visit(pos + 1, cur_w + w[pos])
        chosen.pop()
        for r in s:
            deficit[r] += 1
        # exclude
        if all(deficit[r] <= avail[r] for r in s):
            visit(pos + 1, cur_w)
        for r in s:
            avail[r] += 1

    visit(0, 0.0)
    if not math.isfinite(best_w):
        return math.inf, frozenset(), nodes
    witness = frozenset(order[p] for p in best)
    return math.fsum(system.weights[j] for j in witness), witness, nodes


def enumerate_exact(system: SetSystem, backend: Optional[str] = None) -> tuple[float, frozenset, int]:
    best_w, mask, visited = kernels.multicover_enum(system.serve, system.demand, system.weights, backend=backend)
    if mask < 0:
        return math.inf, frozenset(), visited
    return best_w, frozenset(j for j in range(system.n_choices) if mask >> j & 1), visited


def _solve(system: SetSystem, cap: int, method: str) -> OracleResult:
    if system.n_choices > cap:
        raise OracleRefused(f"oracle refuses {system.n_choices} choices (cap {cap})")
    t0 = time.perf_counter()
    if method == "bnb":
        opt, wit, nodes = branch_and_bound(system)
    elif method == "enumerate":
        opt, wit, nodes = enumerate_exact(system)
    else:
        raise ValueError(f"unknown oracle method {method!r}")
    return OracleResult(opt, wit, nodes, time.perf_counter() - t0)


def exact_mwds(g: ContainmentGraph, cap: int = MWDS_CAP, method: str = "bnb") -> OracleResult:
    return _solve(mwds_system(g), cap, method)


def exact_msds(dg: DirectedDiskGraph, cap: int = MSDS_CAP, method: str = "bnb") -> OracleResult:
    return _solve(msds_system(dg), cap, method)


def exact_lkc(inst: LkcInstance, cap: int = LKC_CAP, method: str = "bnb") -> OracleResult:
    res = _solve(kcover_system(inst.disks, inst.points, inst.K), cap, method)
    if not math.isfinite(res.optimum):
        raise UnderCovered("point under-covered: instance has no K-cover")
    return res


def brute_force_startup_table(inst: LkcInstance, require_cover: bool = False) -> list[dict]:
    """Definitional i-th startup costs by enumerating every disk subset.

    Entry ``i`` maps a skyline tuple at point ``i`` to the least startup cost,
    over points ``0..i``, of any K-cover of those points having that skyline.
    """
    if inst.m > LKC_CAP:
        raise OracleRefused(f"brute force refuses {inst.m} disks (cap {LKC_CAP})")
    table: list[dict] = [dict() for _ in range(inst.n)]
    K = inst.K
    for mask in range(1, 1 << inst.m):
        subset = [d for d in range(inst.m) if mask >> d & 1]
        cov = inst.coverage(subset)
        skies = skyline_sequence(inst, subset, require_cover)
        cost = 0.0
        before: tuple = ()
        for i, sky in enumerate(skies):
            if cov[i] < K:
                break
            cost += sum(inst.disks[d].weight for d in sky if d not in before)
            before = sky
            row = table[i]
            if cost < row.get(sky, math.inf):
                row[sky] = cost
    return table
