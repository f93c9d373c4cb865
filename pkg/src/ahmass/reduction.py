"""Deterministic reductions and order-preserving parallel evaluation.

Quadrature and sampling sums use a fixed pairwise tree with compensated
leaves, so results are bit-identical regardless of how many worker threads
evaluated the integrands.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

_LEAF = 32


def pairwise_sum(values) -> float:
    """Sum with a fixed binary reduction tree; exact (fsum) at the leaves."""
    a = np.asarray(values, dtype=float).ravel()

    def rec(lo, hi):
        if hi - lo <= _LEAF:
            return math.fsum(a[lo:hi])
        mid = (lo + hi) // 2
        return rec(lo, mid) + rec(mid, hi)

    if a.size == 0:
        return 0.0
    return rec(0, a.size)


def dot_sum(weights, values) -> float:
    """pairwise_sum(weights * values) without building a python list."""
    return pairwise_sum(np.asarray(weights, float) * np.asarray(values, float))


def resolve_threads(requested=None) -> int:
    """--threads flag, else AHMASS_THREADS, else 1."""
    if requested is not None:
        return max(1, int(requested))
    env = os.environ.get("AHMASS_THREADS")
    return max(1, int(env)) if env else 1


def parallel_map(fn, items, threads: int = 1) -> list:
    """Order-preserving map; results do not depend on the thread count."""
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))
