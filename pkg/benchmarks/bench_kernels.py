"""Benchmark the compiled hot kernels against the pure-numpy fallback.

Run twice to compare:
    python3 benchmarks/bench_kernels.py
    GROWTH_BOUNDS_NO_NUMBA=1 python3 benchmarks/bench_kernels.py
"""

import time

import numpy as np

from growthbounds import _kernels
from growthbounds.automata import automata_bound
from growthbounds.enumeration import count_walks
from growthbounds.walk_rules import get_rule


def bench_walk_counts(n=13, repeats=3):
    rule = get_rule("sow", "square")
    count_walks(rule, 3)  # warm up JIT compilation
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        counts = count_walks(rule, n)
        best = min(best, time.perf_counter() - t0)
    print(f"count_walks sow square n={n}: {best:.3f}s  (c_{n}={counts[-1]})")


def bench_csr_matvec(dim=20000, nnz_per_row=3, iters=200):
    rng = np.random.default_rng(0)
    indptr = np.arange(dim + 1, dtype=np.int64) * nnz_per_row
    indices = rng.integers(0, dim, dim * nnz_per_row).astype(np.int64)
    data = rng.random(dim * nnz_per_row)
    x = np.ones(dim)
    out = np.empty(dim)
    _kernels.csr_matvec(indptr, indices, data, x, out)  # warm up
    t0 = time.perf_counter()
    for _ in range(iters):
        _kernels.csr_matvec(indptr, indices, data, x, out)
        x, out = out, x
    dt = time.perf_counter() - t0
    print(f"csr_matvec dim={dim} x{iters}: {dt:.3f}s")


def bench_automata(k=9):
    rule = get_rule("sow", "square")
    t0 = time.perf_counter()
    report = automata_bound(rule, k)
    dt = time.perf_counter() - t0
    print(f"automata_bound sow square k={k}: {dt:.3f}s "
          f"(dim={report['dim']}, bound={report['bound']})")


if __name__ == "__main__":
    print(f"numba kernels: {_kernels.USE_NUMBA}")
    bench_walk_counts()
    bench_csr_matvec()
    bench_automata()
