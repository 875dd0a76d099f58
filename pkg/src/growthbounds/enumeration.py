"""Exact walk enumeration: c_n by depth-first search and count-based bounds."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import _kernels
from ._round import nth_root_ceil5
from .walk_rules import (WalkRule, config_table_masks, make_checker,
                         mask_layout)


def _default_threads() -> int:
    env = os.environ.get("GROWTH_BOUNDS_THREADS")
    if env:
        return max(1, int(env))
    return 1


def _kernel_args(rule: WalkRule):
    lat = rule.lattice
    kappa = lat.coordination
    pair_bit, stub_base, nbits = mask_layout(kappa)
    table = np.zeros(1 << nbits, dtype=np.uint8)
    for m in config_table_masks(rule):
        table[m] = 1
    disp = np.array(lat.displacements, dtype=np.int64)
    opp = np.array([lat.opposite(i) for i in range(kappa)], dtype=np.int64)
    stub_bit = np.array([1 << (stub_base + i) for i in range(kappa)],
                        dtype=np.int64)
    chord_bit = np.zeros(kappa * kappa, dtype=np.int64)
    for a in range(kappa):
        for b in range(kappa):
            if a != b:
                key = (a, b) if a < b else (b, a)
                chord_bit[a * kappa + b] = 1 << pair_bit[key]
    return kappa, disp, opp, table, stub_bit, chord_bit


def _count_kernel(rule: WalkRule, n_max: int, threads: int) -> list[int]:
    kappa, disp, opp, table, stub_bit, chord_bit = _kernel_args(rule)
    if threads <= 1 or n_max <= 2:
        counts = np.zeros(n_max + 1, dtype=np.int64)
        _kernels.count_table_walks(n_max, kappa, disp, opp, table, stub_bit,
                                   chord_bit, np.empty(0, dtype=np.int64),
                                   counts)
        return [int(c) for c in counts[1:]]
    # Split the search over allowed depth-2 prefixes; the kernel releases the
    # GIL so threads scale when compiled.
    checker = make_checker(rule)
    prefixes = []
    c1 = c2 = 0
    for d1 in range(kappa):
        if not checker.try_push(d1):
            continue
        c1 += 1
        for d2 in range(kappa):
            if checker.try_push(d2):
                c2 += 1
                prefixes.append(np.array([d1, d2], dtype=np.int64))
                checker.pop()
        checker.pop()
    partials = [np.zeros(n_max + 1, dtype=np.int64) for _ in prefixes]

    def work(i):
        _kernels.count_table_walks(n_max, kappa, disp, opp, table.copy(),
                                   stub_bit, chord_bit, prefixes[i],
                                   partials[i])

    with ThreadPoolExecutor(max_workers=threads) as pool:
        list(pool.map(work, range(len(prefixes))))
    total = sum(partials)
    counts = [int(c) for c in total[1:]]
    counts[0] = c1
    counts[1] = c2
    return counts


def _count_dfs(rule: WalkRule, n_max: int) -> list[int]:
    checker = make_checker(rule)
    kappa = rule.lattice.coordination
    counts = [0] * (n_max + 1)

    def rec(depth):
        nxt = depth + 1
        for d in range(kappa):
            if checker.try_push(d):
                counts[nxt] += 1
                if nxt < n_max:
                    rec(nxt)
                checker.pop()

    rec(0)
    return counts[1:]


def count_walks(rule: WalkRule, n_max: int, threads: int | None = None) -> list[int]:
    """Exact counts c_1..c_n_max of allowed n-step walks from the origin."""
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    kappa = rule.lattice.coordination
    if rule.id == "rw":
        return [kappa ** n for n in range(1, n_max + 1)]
    if rule.id == "nrw":
        return [kappa * (kappa - 1) ** (n - 1) for n in range(1, n_max + 1)]
    if threads is None:
        threads = _default_threads()
    if rule.is_table_rule and rule.lattice.dim == 2:
        # int64 counts are safe while the non-reversing bound fits.
        if kappa * (kappa - 1) ** (n_max - 1) < 2 ** 62:
            return _count_kernel(rule, n_max, threads)
    return _count_dfs(rule, n_max)


def mu_upper_from_counts(counts) -> list:
    """c_n^(1/n) rounded up at the 5th decimal (stays a valid upper bound)."""
    if not counts:
        raise ValueError("counts must be nonempty")
    out = []
    for n, c in enumerate(counts, start=1):
        if c <= 0:
            raise ValueError(f"count c_{n} = {c} must be positive")
        out.append(nth_root_ceil5(int(c), n))
    return out
