"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py --sizes 12 16 20 --repeat 5
"""

import argparse

from diskdom import kernels
from diskdom.bench import run_benchmarks


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[12, 16, 20])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if "cython" not in kernels.available_backends():
        print("compiled extension not built; only the Python backend is available")
    header = f"{'kernel':<22}{'size':>6}{'python s':>12}{'cython s':>12}{'speedup':>9}  agree"
    print(header)
    print("-" * len(header))
    for r in run_benchmarks(tuple(args.sizes), seed=args.seed, repeat=args.repeat):
        size = r.get("n", r.get("m"))
        cy = f"{r['cython_s']:.6f}" if "cython_s" in r else "-"
        sp = f"{r['speedup']:.1f}x" if "speedup" in r else "-"
        print(f"{r['kernel']:<22}{size:>6}{r['python_s']:>12.6f}{cy:>12}{sp:>9}  {r['agree']}")


if __name__ == "__main__":
    main()
