#!/usr/bin/env python3
"""Time the compiled eigensolver kernel against the pure-Python fallback.

Both kernels run the same Householder + implicit-QL recurrences on the
operator matrices of random weighted trees, so the ratio is the cost of
interpreted inner loops.  Usage:

    python benchmarks/bench_eigensolver.py [--sizes 50,100,200,400] [--repeats 3]
"""
import argparse
import time

import numpy as np

import treenodal as tn
from treenodal import _eigen_py

try:
    from treenodal import _eigen_cy
except ImportError:
    _eigen_cy = None


def operator_matrix(n, seed):
    tree = tn.generate("random_pruefer", n, weight_law="uniform:0.5:2", seed=seed)
    r = tn.random_potential(n, law="uniform:-1:1", seed=seed + 1)
    return tn.assemble(tree, r).matrix


def best_time(kernel, a, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        d, z, fail = kernel.symmetric_eigh(a)
        best = min(best, time.perf_counter() - t0)
    assert fail == -1
    return best, d


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="50,100,200,400")
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    if _eigen_cy is None:
        print("compiled kernel not built; timing the pure kernel only")
    print(f"{'n':>6} {'pure (s)':>12} {'compiled (s)':>14} {'speedup':>9} {'agree':>11}")
    for n in sizes:
        a = operator_matrix(n, seed=n)
        t_py, d_py = best_time(_eigen_py, a, args.repeats)
        if _eigen_cy is None:
            print(f"{n:>6} {t_py:>12.4f} {'-':>14} {'-':>9} {'-':>11}")
            continue
        t_cy, d_cy = best_time(_eigen_cy, a, args.repeats)
        agree = float(np.max(np.abs(np.sort(d_py) - np.sort(d_cy))))
        print(f"{n:>6} {t_py:>12.4f} {t_cy:>14.4f} {t_py / t_cy:>8.1f}x {agree:>11.2e}")


if __name__ == "__main__":
    main()
