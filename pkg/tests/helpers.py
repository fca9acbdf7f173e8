"""Independent checks used by several test files."""

from itertools import combinations

from diskdom.graphs import is_strongly_dominating


def swap_optimal(dg, U, k):
    """True when no swap of at most k members for fewer outsiders stays feasible."""
    U = set(U)
    outside = [v for v in range(dg.n) if v not in U]
    for s in range(1, k + 1):
        for S in combinations(sorted(U), s):
            base = U - set(S)
            for t in range(s):
                for T in combinations(outside, t):
                    if is_strongly_dominating(dg, base | set(T)):
                        return False
    return True


def lkc_corpus(count, seed0=0, n_max=6, m_max=7, K_max=2):
    """Random small LKC instances; generator failures are skipped."""
    import numpy as np

    from diskdom.instances import generate

    rng = np.random.default_rng(seed0)
    out = []
    s = 0
    while len(out) < count:
        n = int(rng.integers(1, n_max + 1))
        m = int(rng.integers(1, m_max + 1))
        K = int(rng.integers(1, K_max + 1))
        try:
            out.append(generate("lkc", m, density=float(rng.uniform(0.5, 3)), seed=seed0 * 100000 + s,
                                points=n, K=K).lkc())
        except ValueError:
            pass
        s += 1
    return out
