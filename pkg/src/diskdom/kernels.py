"""Kernel dispatch: the compiled extension when importable, pure Python otherwise.

Set ``DISKDOM_PURE_PYTHON=1`` to force the fallback. Both backends share one
call surface, defined here, and return identical results.
"""

from __future__ import annotations

import math
import os
from types import ModuleType
from typing import Optional, Sequence

import numpy as np

from . import _purepy

try:
    from . import _speedups
except ImportError:  # extension not built
    _speedups = None


def _select() -> ModuleType:
    if os.environ.get("DISKDOM_PURE_PYTHON", "") not in ("", "0") or _speedups is None:
        return _purepy
    return _speedups


_impl = _select()
BACKEND = _impl.NAME


def available_backends() -> list[str]:
    return ["python"] + (["cython"] if _speedups is not None else [])


def _module(backend: Optional[str]) -> ModuleType:
    if backend is None:
        return _impl
    if backend == "python":
        return _purepy
    if backend == "cython":
        if _speedups is None:
            raise RuntimeError("compiled kernels are not built")
        return _speedups
    raise ValueError(f"unknown backend {backend!r}")


def multicover_enum(serve: Sequence[Sequence[int]], demand: Sequence[int], weights: Sequence[float],
                    backend: Optional[str] = None):
    mod = _module(backend)
    if mod is _purepy:
        return _purepy.multicover_enum(serve, demand, list(map(float, weights)))
    indptr = np.zeros(len(serve) + 1, dtype=np.intc)
    indptr[1:] = np.cumsum([len(s) for s in serve])
    indices = np.fromiter((r for s in serve for r in s), dtype=np.intc, count=int(indptr[-1]))
    best_w, mask, visited = mod.multicover_enum(indptr, indices, np.asarray(demand, dtype=np.intc),
                                                np.asarray(weights, dtype=np.float64))
    if mask >= 0:
        best_w = math.fsum(float(weights[j]) for j in range(len(serve)) if mask >> j & 1)
    return best_w, mask, visited


def lkc_relax(prev, prev_cost, cur, rank, weights, backend: Optional[str] = None):
    mod = _module(backend)
    if mod is _purepy:
        best, arg = _purepy.lkc_relax([tuple(r) for r in prev], list(prev_cost), [tuple(r) for r in cur],
                                      list(rank), list(weights))
        return np.asarray(best, dtype=np.float64), np.asarray(arg, dtype=np.int64)
    K = len(cur[0]) if len(cur) else 1
    return mod.lkc_relax(np.asarray(prev, dtype=np.int64).reshape(-1, K),
                         np.asarray(prev_cost, dtype=np.float64),
                         np.asarray(cur, dtype=np.int64).reshape(-1, K),
                         np.asarray(rank, dtype=np.int64), np.asarray(weights, dtype=np.float64))


def find_swap(masks: Sequence[int], members: Sequence[int], outside: Sequence[int], nconstraints: int,
              k: int, backend: Optional[str] = None):
    mod = _module(backend)
    if mod is _purepy or nconstraints > 64:
        return _purepy.find_swap(masks, members, outside, nconstraints, k)
    return mod.find_swap(np.asarray(masks, dtype=np.uint64), np.asarray(members, dtype=np.int64),
                         np.asarray(outside, dtype=np.int64), nconstraints, k)
