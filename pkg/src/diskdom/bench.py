"""Backend comparison: run each kernel under every available backend on the same input."""

from __future__ import annotations

import time

import numpy as np

from . import kernels
from .cover import kcover_system, msds_system, mwds_system
from .instances import generate
from .lkc import enumerate_tuples, line_ranks
from .msds import local_search

TIMING_KEYS = ("python_s", "cython_s", "speedup")


def _timed(fn, repeat: int):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return out, best


def _cases(size: int, seed: int):
    g = generate("mwds", size, density=0.6, seed=seed).containment_graph()
    yield "multicover_enum/mwds", {"n": size}, mwds_system(g), None

    dg = generate("msds", size, density=0.6, seed=seed).directed_graph()
    yield "local_search/msds", {"n": size}, msds_system(dg), None

    inst = generate("lkc", size, density=4.0, seed=seed, points=size, K=2).lkc()
    yield "lkc_relax", {"m": size, "K": 2}, inst, None


def _call(name, payload, extra, backend):
    if name.startswith("multicover_enum"):
        return lambda: kernels.multicover_enum(payload.serve, payload.demand, payload.weights, backend=backend)
    if name.startswith("local_search"):
        return lambda: sorted(local_search(payload, 3, backend=backend))
    inst = payload
    layers = [enumerate_tuples(inst, i) for i in range(inst.n)]
    ranks = [line_ranks(inst, i) for i in range(inst.n)]
    weights = [d.weight for d in inst.disks] + [0.0]

    def run():
        prev, cost = [(inst.m,) * inst.K], np.zeros(1)
        for cur, rank in zip(layers, ranks):
            cost, _ = kernels.lkc_relax(prev, cost, cur, rank, weights, backend=backend)
            prev = cur
        return float(np.min(cost)) if len(cost) else None
    return run


def _norm(out):
    if isinstance(out, tuple):
        return tuple(_norm(o) for o in out)
    if isinstance(out, np.ndarray):
        return out.tolist()
    return out


def run_benchmarks(sizes=(12, 16, 20), seed: int = 0, repeat: int = 3) -> list[dict]:
    backends = kernels.available_backends()
    rows = []
    for size in sizes:
        for name, params, payload, extra in _cases(size, seed):
            results, times = {}, {}
            for b in backends:
                out, t = _timed(_call(name, payload, extra, b), repeat)
                results[b], times[b] = _norm(out), t
            row = {"kernel": name, **params, "seed": seed,
                   "agree": len({repr(v) for v in results.values()}) == 1,
                   "python_s": round(times["python"], 6)}
            if "cython" in times:
                row["cython_s"] = round(times["cython"], 6)
                row["speedup"] = round(times["python"] / max(times["cython"], 1e-9), 2)
            rows.append(row)
    return rows
