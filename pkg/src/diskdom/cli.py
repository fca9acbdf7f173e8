"""Command line entry point: ``diskdom <command> [options]``.

Every command prints one JSON object per line (sorted keys) or CSV with
``--format csv``. Exit codes: 0 success, 1 solve failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Optional

import numpy as np

from . import __version__, kernels
from .bench import TIMING_KEYS, run_benchmarks
from .graphs import is_dominating, is_strongly_dominating
from .instances import Instance, generate, read_instance, write_instance
from .lkc import check_lemma4, dp_solve, startup_cost
from .lp import round_to_multiset, solve_lp_relaxation
from .msds import msds_phases
from .oracles import exact_lkc, exact_msds, exact_mwds
from .sampling import (
    Elements,
    SamplingConfig,
    SamplingTrace,
    iterated_mwds,
    selection_probability,
    uniform_sampling_process,
)


class SolveFailure(RuntimeError):
    pass


def _ids(s) -> str:
    return " ".join(str(i) for i in sorted(s))


def run_report(problem: str, inst: Instance, params: dict, value: float, solution, feasible: bool,
               oracle: Optional[float] = None, extra: Optional[dict] = None) -> dict:
    rep = {
        "problem": problem,
        "instance": inst.digest(),
        "params": params,
        "value": value,
        "size": len(solution),
        "solution": _ids(solution),
        "feasible": feasible,
        "oracle": oracle,
        "ratio": None,
    }
    if oracle is not None and oracle > 0:
        rep["ratio"] = value / oracle
        if rep["ratio"] < 1 - 1e-9:
            raise SolveFailure(f"solution value {value} beats the oracle {oracle}")
    if extra:
        rep.update(extra)
    return rep


def emit(rows: list[dict], args) -> None:
    if args.format == "csv":
        keys = sorted({k for r in rows for k in r})
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: json.dumps(v, sort_keys=True) if isinstance(v, dict) else v for k, v in r.items()})
        text = buf.getvalue()
    else:
        text = "".join(json.dumps(r, sort_keys=True) + "\n" for r in rows)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _write_trace(path: Optional[str], payload) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, sort_keys=True)
            fh.write("\n")


def _load(args, problem: str) -> Instance:
    inst = read_instance(args.instance)
    if inst.problem != problem:
        raise SolveFailure(f"instance is a {inst.problem} problem, not {problem}")
    return inst


def cmd_gen(args) -> list[dict]:
    inst = generate(args.kind, args.n, density=args.density, radius_range=(args.rmin, args.rmax),
                    weight_range=(args.wmin, args.wmax), seed=args.seed, points=args.points, K=args.k)
    text = write_instance(inst)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return []


def cmd_mwds(args) -> list[dict]:
    inst = _load(args, "mwds")
    g = inst.containment_graph()
    cfg = SamplingConfig(c=args.c, c_prime=args.cprime, seed=args.seed)
    traces: list = []
    t0 = time.perf_counter()
    U = iterated_mwds(g, cfg, traces=traces)
    elapsed = time.perf_counter() - t0
    feasible = is_dominating(g, U)
    if not feasible:
        raise SolveFailure("output is not a dominating set")
    oracle = exact_mwds(g).optimum if args.oracle else None
    extra = {"wall_time": elapsed} if args.timing else None
    rep = run_report("mwds", inst, {"seed": args.seed, "c": args.c, "cprime": args.cprime},
                     g.weight(U), U, feasible, oracle, extra)
    _write_trace(args.trace, [t.to_dict() for t in traces])
    return [rep]


def cmd_msds(args) -> list[dict]:
    inst = _load(args, "msds")
    dg = inst.directed_graph()
    t0 = time.perf_counter()
    res = msds_phases(dg, args.swap_k)
    elapsed = time.perf_counter() - t0
    U = res.solution
    feasible = is_strongly_dominating(dg, U)
    if not feasible:
        raise SolveFailure("output is not strongly dominating")
    oracle = exact_msds(dg).optimum if args.oracle else None
    extra = {"forward_size": len(res.forward), "backward_size": len(res.backward),
             "union_size": len(res.pruned_union)}
    if args.timing:
        extra["wall_time"] = elapsed
    rep = run_report("msds", inst, {"swap_k": args.swap_k}, float(len(U)), U, feasible, oracle, extra)
    _write_trace(args.trace, {"forward": sorted(res.forward), "backward": sorted(res.backward),
                              "pruned_union": sorted(res.pruned_union), "solution": sorted(U)})
    return [rep]


def cmd_lkc(args) -> list[dict]:
    inst = _load(args, "lkc")
    lk = inst.lkc()
    if lk.K > 4:
        raise SolveFailure("the skyline DP is limited to K <= 4")
    t0 = time.perf_counter()
    res = dp_solve(lk)
    elapsed = time.perf_counter() - t0
    feasible = lk.is_kcover(res.chosen)
    if not feasible:
        raise SolveFailure("DP output is not a K-cover")
    oracle = exact_lkc(lk).optimum if args.oracle else None
    extra = {"dp_cost": res.cost, "startup_cost": startup_cost(lk, res.chosen)}
    if args.check_lemma4:
        runs = check_lemma4(lk, res.chosen)
        extra["max_skyline_runs"] = max(runs.values(), default=0)
    if args.timing:
        extra["wall_time"] = elapsed
    rep = run_report("lkc", inst, {"K": lk.K}, lk.weight(res.chosen), res.chosen, feasible, oracle, extra)
    _write_trace(args.trace, {"points_order": list(lk.order), "skylines": [list(t) for t in res.skylines]})
    return [rep]


def cmd_exact(args) -> list[dict]:
    inst = read_instance(args.instance)
    if inst.problem == "mwds":
        g = inst.containment_graph()
        r = exact_mwds(g, method=args.method)
        feasible = is_dominating(g, r.witness)
    elif inst.problem == "msds":
        dg = inst.directed_graph()
        r = exact_msds(dg, method=args.method)
        feasible = is_strongly_dominating(dg, r.witness)
    else:
        lk = inst.lkc()
        r = exact_lkc(lk, method=args.method)
        feasible = lk.is_kcover(r.witness)
    extra = {"method": args.method, "nodes_explored": r.nodes_explored}
    if args.timing:
        extra["wall_time"] = r.time
    return [run_report(inst.problem, inst, {"method": args.method}, r.optimum, r.witness, feasible, None, extra)]


def _sampling_chunk(job):
    counts, n, L, c, cprime, seeds = job
    g, ms = _SAMPLING_STATE[0], _SAMPLING_STATE[1]
    cfg = SamplingConfig(c=c, c_prime=cprime)
    sel = np.zeros(counts, dtype=np.int64)
    forced = np.zeros(counts, dtype=np.int64)
    for ss in seeds:
        tr = SamplingTrace(L)
        uniform_sampling_process(ms, g, L, cfg, np.random.default_rng(ss), tr)
        for e in tr.selected_elements():
            sel[e] += 1
        for e in tr.forced_elements():
            forced[e] += 1
    return sel, forced


_SAMPLING_STATE: list = []


def _init_sampling(g, ms):
    _SAMPLING_STATE[:] = [g, ms]


def cmd_sampling_stats(args) -> list[dict]:
    inst = _load(args, "mwds")
    g = inst.containment_graph()
    ms = round_to_multiset(solve_lp_relaxation(g), g.n)
    L = args.L or g.n
    if args.trials < 1:
        raise SolveFailure("--trials must be positive")
    if L < 2:
        raise SolveFailure("sampling needs L >= 2")
    els = Elements(ms)
    T = args.trials
    seeds = np.random.SeedSequence(args.seed).spawn(T)
    workers = max(1, args.workers)
    chunks = [seeds[i::workers] for i in range(workers)]
    jobs = [(len(els), g.n, L, args.c, args.cprime, ch) for ch in chunks if ch]
    if workers == 1:
        _init_sampling(g, ms)
        parts = [_sampling_chunk(j) for j in jobs]
    else:
        with ProcessPoolExecutor(workers, initializer=_init_sampling, initargs=(g, ms)) as ex:
            parts = list(ex.map(_sampling_chunk, jobs))
    sel = sum(p[0] for p in parts)
    forced = sum(p[1] for p in parts)
    p = selection_probability(L, args.c)
    margin = 3 * math.sqrt(p * (1 - p) / T)
    rows = []
    within = 0
    for e in range(len(els)):
        freq = sel[e] / T
        ok = bool(freq <= p + margin)
        within += ok
        rows.append({"row": "element", "element": e, "disk": els.disk_of[e], "selected": int(sel[e]),
                     "forced": int(forced[e]), "frequency": freq, "bound": p + margin, "within": ok})
    rows.append({"row": "summary", "trials": T, "L": L, "c": args.c, "cprime": args.cprime, "seed": args.seed,
                 "elements": len(els), "total_selected": int(sel.sum()),
                 "mean_selected": float(sel.sum()) / T, "probability": p, "bound": p + margin,
                 "fraction_within": within / len(els) if len(els) else 1.0})
    return rows


def cmd_bench(args) -> list[dict]:
    rows = run_benchmarks(tuple(args.sizes), seed=args.seed, repeat=args.repeat)
    for r in rows:
        r["backend_default"] = kernels.BACKEND
        if not args.timing:
            for k in TIMING_KEYS:
                r.pop(k, None)
    return rows


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--c", type=float, default=4.0, help="sampling constant c")
    common.add_argument("--cprime", type=float, default=32.0, help="class-count constant c'")
    common.add_argument("--swap-k", type=int, default=3, help="local search swap size")
    common.add_argument("--oracle", action="store_true", help="also run the exact solver and report the ratio")
    common.add_argument("--trace", metavar="PATH", help="write a JSON trace of the run")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    common.add_argument("--timing", action="store_true", help="include wall-clock times (not reproducible)")

    p = argparse.ArgumentParser(prog="diskdom", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common], help="generate a random instance file")
    g.add_argument("kind", choices=("mwds", "msds", "lkc"))
    g.add_argument("--n", type=int, default=10, help="number of disks")
    g.add_argument("--points", type=int, default=None, help="lkc: number of points (default n)")
    g.add_argument("--k", type=int, default=1, help="lkc: coverage demand K")
    g.add_argument("--density", type=float, default=1.0)
    g.add_argument("--rmin", type=float, default=0.8)
    g.add_argument("--rmax", type=float, default=2.0)
    g.add_argument("--wmin", type=float, default=1.0)
    g.add_argument("--wmax", type=float, default=5.0)
    g.set_defaults(func=cmd_gen)

    for name, func, hlp in (("mwds", cmd_mwds, "min-weight dominating set by LP rounding + sampling"),
                            ("msds", cmd_msds, "strongly dominating set by local search"),
                            ("lkc", cmd_lkc, "linear K-cover by the skyline DP")):
        q = sub.add_parser(name, parents=[common], help=hlp)
        q.add_argument("instance")
        if name == "lkc":
            q.add_argument("--check-lemma4", action="store_true", help="report the max skyline run count")
        q.set_defaults(func=func)

    e = sub.add_parser("exact", parents=[common], help="exact optimum by exhaustive search")
    e.add_argument("instance")
    e.add_argument("--method", choices=("bnb", "enumerate"), default="bnb")
    e.set_defaults(func=cmd_exact)

    s = sub.add_parser("sampling-stats", parents=[common], help="per-element selection frequencies")
    s.add_argument("instance")
    s.add_argument("--trials", type=int, required=True)
    s.add_argument("--L", type=int, default=None, help="sampling parameter (default: number of disks)")
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_sampling_stats)

    b = sub.add_parser("bench", parents=[common], help="compare compiled and pure-Python kernels")
    b.add_argument("--sizes", type=int, nargs="+", default=[12, 16, 20])
    b.add_argument("--repeat", type=int, default=3)
    b.set_defaults(func=cmd_bench)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        rows = args.func(args)
    except (ValueError, RuntimeError, OSError) as exc:
        print(f"diskdom {args.command}: {exc}", file=sys.stderr)
        return 1
    if rows:
        emit(rows, args)
    return 0


if __name__ == "__main__":
    sys.exit(main())
