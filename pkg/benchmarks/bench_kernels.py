"""Compare the numba kernels with their numpy/pure-Python fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat N]

Both flavours are called directly, so the RCC5_DISABLE_NUMBA flag does not
matter here. Each timing is the best of ``--repeat`` runs after one warm-up
call (which also triggers JIT compilation).
"""
import argparse
import time

import numpy as np

from rcc5 import _accel, kernels
from rcc5.algebra import default_table
from rcc5.classifier import enumerate_small_subsets


def best_of(fn, args, repeat):
    fn(*args)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def closure_case(table):
    masks = enumerate_small_subsets(4)
    return "closure of 41449 subsets", kernels._closure_masks_nb, kernels._closure_masks_py, \
        (masks, table.compose_array, table.converse_array)


def oracle_case(rng):
    n = 4
    rel, valid = kernels.cell_relation_table(n)
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    picks = rng.choice(len(pairs), size=6, replace=False)
    xs = np.array([pairs[p][0] for p in picks], dtype=np.int64)
    ys = np.array([pairs[p][1] for p in picks], dtype=np.int64)
    masks = rng.integers(1, 32, size=6).astype(np.int64)
    return "oracle patterns, 4 variables", kernels._model_patterns_nb, kernels._model_patterns_py, \
        (rel, valid, xs, ys, masks)


def pc_case(table, rng, n=60):
    lab = np.full((n, n), 31, dtype=np.uint8)
    np.fill_diagonal(lab, 16)
    conv = table.converse_array
    for _ in range(3 * n):
        i, j = rng.choice(n, size=2, replace=False)
        m = int(rng.integers(1, 32)) | 2  # keep PO so the network rarely empties
        lab[i, j] &= m
        lab[j, i] &= conv[m]

    def run(fn):
        def call(lab0, comp, cv):
            return fn(lab0.copy(), comp, cv)
        return call

    return f"path consistency, {n} variables", run(kernels._path_consistency_nb), \
        run(kernels._path_consistency_py), (lab, table.compose_array, table.converse_array)


def scc_case(rng, n=40_000, m=80_000):
    src = rng.integers(0, n, size=m)
    dst = rng.integers(0, n, size=m)
    order = np.argsort(src, kind="stable")
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
    indices = dst[order].astype(np.int64)
    return f"Tarjan SCC, {n} nodes / {m} arcs", kernels._scc_nb, kernels._scc_py, (n, indptr, indices)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    table = default_table()
    rng = np.random.default_rng(args.seed)
    cases = [closure_case(table), oracle_case(rng), pc_case(table, rng), scc_case(rng)]
    if not _accel.HAVE_NUMBA:
        print("numba is not importable; the numba column runs the Python code")
    print(f"{'kernel':<36} {'numba':>10} {'fallback':>10} {'speedup':>8}")
    for name, nb, py, fargs in cases:
        t_nb = best_of(nb, fargs, args.repeat)
        t_py = best_of(py, fargs, args.repeat)
        print(f"{name:<36} {t_nb * 1e3:>8.2f}ms {t_py * 1e3:>8.2f}ms {t_py / t_nb:>7.1f}x")


if __name__ == "__main__":
    main()
