"""Compiled vs pure-Python kernels on the workloads the package actually runs.

    python benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import time

import numpy as np

from crosskiss import _fallback, kissing, lattice

try:
    from crosskiss import _kernels
except ImportError:
    _kernels = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def workloads():
    X = kissing.construct_X(kissing.CodeParams(16, 3, 1)).points
    Xs = kissing.construct_X(kissing.CodeParams(12, 2, 1)).points
    center = X[0].copy()
    L = lattice.named_lattice("L1")
    d, rows = L.scaled()
    box = np.array(rows, dtype=np.int64)
    lo, hi = np.full(4, -12, dtype=np.int64), np.full(4, 12, dtype=np.int64)
    target = np.zeros(4, dtype=np.int64)

    def box_search(mod):
        coeffs = np.zeros((4096, 4), dtype=np.int64)
        norms = np.zeros(4096, dtype=np.int64)
        if mod is _fallback:
            return lambda: mod.enumerate_box(rows, [0] * 4, list(lo), list(hi), 2 * d, coeffs, norms)
        return lambda: mod.enumerate_box(box, target, lo, hi, 2 * d, coeffs, norms)

    return [
        ("count_within  |X|=116480", lambda m: lambda: m.count_within(X, center, 5)),
        ("greedy_select |X|=5280", lambda m: lambda: m.greedy_select(Xs, 4)),
        ("first_violation full scan", lambda m: lambda: m.first_violation(Xs, 1)),
        ("enumerate_box 25^4 coeffs", box_search),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"{'kernel':28s} {'compiled':>10s} {'python':>10s} {'speedup':>8s}")
    for name, make in workloads():
        py = best_of(make(_fallback), args.repeat)
        if _kernels is None:
            print(f"{name:28s} {'n/a':>10s} {py:10.4f}")
            continue
        c = best_of(make(_kernels), args.repeat)
        print(f"{name:28s} {c:10.4f} {py:10.4f} {py / c:7.1f}x")


if __name__ == "__main__":
    main()
