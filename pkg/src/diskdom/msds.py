"""Strongly dominating sets in directed disk graphs via hitting set + disk cover local search."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from . import kernels
from .cover import SetSystem, msds_system
from .geometry import Disk, Point, contains
from .graphs import DirectedDiskGraph, is_strongly_dominating, prune_redundant

DEFAULT_SWAP_K = 3


@dataclass(frozen=True)
class HittingInstance:
    """Choose centers so that every range contains at least one chosen center."""

    points: tuple[Point, ...]
    ranges: tuple[Disk, ...]

    def system(self) -> SetSystem:
        serve = tuple(tuple(v for v, d in enumerate(self.ranges) if contains(d, p)) for p in self.points)
        return SetSystem(serve, (1,) * len(self.ranges), (1.0,) * len(self.points))


@dataclass(frozen=True)
class CoverInstance:
    """Choose disks so that every target center lies in at least one chosen disk."""

    disks: tuple[Disk, ...]
    targets: tuple[Point, ...]

    def system(self) -> SetSystem:
        serve = tuple(tuple(v for v, t in enumerate(self.targets) if contains(d, t)) for d in self.disks)
        return SetSystem(serve, (1,) * len(self.targets), (1.0,) * len(self.disks))


def forward_instance(dg: DirectedDiskGraph) -> HittingInstance:
    return HittingInstance(tuple(d.center for d in dg.disks), dg.disks)


def backward_instance(dg: DirectedDiskGraph) -> CoverInstance:
    return CoverInstance(dg.disks, tuple(d.center for d in dg.disks))


def local_search(system: SetSystem, k: int, start: Optional[Iterable[int]] = None,
                 backend: Optional[str] = None) -> frozenset:
    """Apply first-improving swaps of at most ``k`` out / fewer in until none is left."""
    if k < 1:
        raise ValueError("swap size k must be >= 1")
    current = set(range(system.n_choices) if start is None else start)
    if not system.is_feasible(current):
        raise ValueError("local search needs a feasible starting set")
    masks = system.masks()
    while True:
        members = sorted(current)
        outside = [j for j in range(system.n_choices) if j not in current]
        swap = kernels.find_swap(masks, members, outside, system.n_constraints, k, backend=backend)
        if swap is None:
            return frozenset(current)
        S, T = swap
        current.difference_update(S)
        current.update(T)


def local_search_hitting(inst: HittingInstance, k: int = DEFAULT_SWAP_K,
                         start: Optional[Iterable[int]] = None) -> frozenset:
    return local_search(inst.system(), k, start)


def local_search_cover(inst: CoverInstance, k: int = DEFAULT_SWAP_K,
                       start: Optional[Iterable[int]] = None) -> frozenset:
    return local_search(inst.system(), k, start)


@dataclass(frozen=True)
class MsdsResult:
    forward: frozenset
    backward: frozenset
    pruned_union: frozenset
    solution: frozenset


def msds_phases(dg: DirectedDiskGraph, k: int = DEFAULT_SWAP_K) -> MsdsResult:
    U1 = local_search_hitting(forward_instance(dg), k)
    U2 = local_search_cover(backward_instance(dg), k)
    union = prune_redundant(dg, U1 | U2, lambda U: is_strongly_dominating(dg, U))
    # Polishing with the joint constraints only ever shrinks the union.
    final = local_search(msds_system(dg), k, start=union)
    if not is_strongly_dominating(dg, final):
        raise AssertionError("local search returned a set that is not strongly dominating")
    return MsdsResult(U1, U2, union, final)


def solve_msds(dg: DirectedDiskGraph, k: int = DEFAULT_SWAP_K) -> frozenset:
    return msds_phases(dg, k).solution
