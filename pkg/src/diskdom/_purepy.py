"""Pure-Python kernels. The compiled module mirrors these line for line."""

from __future__ import annotations

import math
from itertools import combinations
from typing import Optional, Sequence

NAME = "python"

TIE_EPS = 1e-9


def multicover_enum(serve: Sequence[Sequence[int]], demand: Sequence[int], weights: Sequence[float]):
    """Exhaustive min-weight multicover in Gray-code order.

    ``serve[j]`` lists the constraints choice ``j`` contributes to; every
    constraint ``r`` needs ``demand[r]`` chosen servers. Returns
    ``(best_weight, best_mask, visited)`` with ``best_weight = inf`` when no
    subset is feasible. A later subset replaces the incumbent only if it is
    lighter by more than ``TIE_EPS``.
    """
    m = len(serve)
    count = [0] * len(demand)
    deficit = sum(1 for d in demand if d > 0)
    best_w = math.inf
    best_mask = -1
    if deficit == 0:
        best_w, best_mask = 0.0, 0
    mask = 0
    w = 0.0
    total = 1 << m
    for i in range(1, total):
        j = (i & -i).bit_length() - 1
        bit = 1 << j
        if mask & bit:
            mask ^= bit
            w -= weights[j]
            for r in serve[j]:
                if count[r] == demand[r]:
                    deficit += 1
                count[r] -= 1
        else:
            mask |= bit
            w += weights[j]
            for r in serve[j]:
                count[r] += 1
                if count[r] == demand[r]:
                    deficit -= 1
        if deficit == 0 and w < best_w - TIE_EPS:
            best_w = w
            best_mask = mask
    if best_mask >= 0:
        best_w = math.fsum(weights[j] for j in range(m) if best_mask >> j & 1)
    return best_w, best_mask, total


def lkc_relax(prev, prev_cost, cur, rank, weights):
    """One skyline-DP layer.

    ``prev`` / ``cur`` are rows of K disk ids (the dummy id is ``len(rank) - 1``
    and must carry weight 0). ``cur`` rows are compatible with a ``prev`` row
    when every disk of the ``prev`` row not in the ``cur`` row ranks after all
    of the ``cur`` row. Returns per-``cur`` best cost and predecessor index
    (-1 if none); ties keep the first predecessor.
    """
    ncur = len(cur)
    best = [math.inf] * ncur
    arg = [-1] * ncur
    for c in range(ncur):
        row = cur[c]
        top = max(rank[d] for d in row)
        bc = math.inf
        ba = -1
        for p in range(len(prev)):
            pc = prev_cost[p]
            if pc == math.inf:
                continue
            prow = prev[p]
            ok = True
            for d in prow:
                if d not in row and rank[d] <= top:
                    ok = False
                    break
            if not ok:
                continue
            add = 0.0
            for d in row:
                if d not in prow:
                    add += weights[d]
            val = pc + add
            if val < bc:
                bc = val
                ba = p
        best[c] = bc
        arg[c] = ba
    return best, arg


def _count_planes(masks: Sequence[int], chosen: Sequence[int], nplanes: int, full: int) -> list[int]:
    planes = [0] * nplanes
    for j in chosen:
        carry = masks[j]
        for b in range(nplanes):
            nxt = planes[b] & carry
            planes[b] ^= carry
            carry = nxt
            if not carry:
                break
    return planes


def _equal_to(planes: list[int], value: int, full: int) -> int:
    out = full
    for b, plane in enumerate(planes):
        out &= plane if value >> b & 1 else ~plane & full
    return out


def find_swap(masks: Sequence[int], members: Sequence[int], outside: Sequence[int],
              nconstraints: int, k: int) -> Optional[tuple[tuple[int, ...], tuple[int, ...]]]:
    """First improving swap: drop ``S`` (|S| <= k) from ``members``, add ``T``
    (|T| < |S|) from ``outside``, keeping every constraint served.

    ``masks[j]`` is the constraint bitmask of choice ``j``. Scan order: |S|
    ascending, ``S`` lexicographic, then |T| ascending, ``T`` lexicographic.
    """
    full = (1 << nconstraints) - 1
    nplanes = max(1, k.bit_length(), len(members).bit_length())
    member_planes = _count_planes(masks, members, nplanes, full)
    exact = [0] + [_equal_to(member_planes, c, full) for c in range(1, k + 1)]
    sp = max(1, k.bit_length())
    for s in range(1, min(k, len(members)) + 1):
        for S in combinations(members, s):
            planes = _count_planes(masks, S, sp, full)
            uncovered = 0
            for c in range(1, s + 1):
                uncovered |= _equal_to(planes, c, full) & exact[c]
            if not uncovered:
                return S, ()
            for t in range(1, s):
                for T in combinations(outside, t):
                    got = 0
                    for j in T:
                        got |= masks[j]
                    if uncovered & ~got == 0:
                        return S, T
    return None
