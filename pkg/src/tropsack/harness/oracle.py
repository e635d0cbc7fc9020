"""Exhaustive reference solvers for small instances."""

from __future__ import annotations

from typing import Tuple

import numpy as np

from ..core import EMPTY_SOLUTION, KnapsackInstance, Solution

MAX_BRUTE_N = 25
_MIM_THRESHOLD = 20


def brute_force_opt(instance: KnapsackInstance) -> Tuple[int, Solution]:
    """Exact optimum by subset enumeration; meet-in-the-middle above
    20 items.  Guarded at 25 items."""
    n = instance.n
    if n > MAX_BRUTE_N:
        raise ValueError(f"brute force capped at {MAX_BRUTE_N} items, got {n}")
    if n == 0:
        return 0, EMPTY_SOLUTION
    if n <= _MIM_THRESHOLD:
        return _enumerate(instance)
    return _meet_in_middle(instance)


def _subset_sums(weights, profits):
    w = np.zeros(1, dtype=np.int64)
    p = np.zeros(1, dtype=np.int64)
    for wi, pi in zip(weights, profits):
        w = np.concatenate([w, w + wi])
        p = np.concatenate([p, p + pi])
    return w, p


def _enumerate(instance):
    w, p = _subset_sums(instance.weights, instance.profits)
    ok = w <= instance.capacity
    p_ok = np.where(ok, p, -1)
    best = int(p_ok.argmax())
    ids = [i for i in range(instance.n) if best >> i & 1]
    return int(p[best]), Solution.from_indices(instance, ids)


def _meet_in_middle(instance):
    n = instance.n
    half = n // 2
    w1, p1 = _subset_sums(instance.weights[:half], instance.profits[:half])
    w2, p2 = _subset_sums(instance.weights[half:], instance.profits[half:])
    order = np.argsort(w2, kind="stable")
    w2s, p2s = w2[order], p2[order]
    # best-profit prefix over the weight-sorted right half
    best_p = np.maximum.accumulate(p2s)
    best_at = np.zeros(len(p2s), dtype=np.int64)
    cur = 0
    for i in range(len(p2s)):
        if p2s[i] > p2s[cur]:
            cur = i
        best_at[i] = cur
    t = instance.capacity
    best = -1
    pick = (0, 0)
    pos = np.searchsorted(w2s, t - w1, side="right") - 1
    for m1 in range(len(w1)):
        j = int(pos[m1])
        if w1[m1] > t or j < 0:
            continue
        total = int(p1[m1] + best_p[j])
        if total > best:
            best = total
            pick = (m1, int(order[best_at[j]]))
    m1, m2 = pick
    ids = [i for i in range(half) if m1 >> i & 1] + \
        [half + i for i in range(n - half) if m2 >> i & 1]
    return best, Solution.from_indices(instance, ids)


def all_optimal_solutions(instance: KnapsackInstance):
    """All optimal subsets (index frozensets); exponential, tiny n only."""
    n = instance.n
    if n > 16:
        raise ValueError("all_optimal_solutions capped at 16 items")
    w, p = _subset_sums(instance.weights, instance.profits) if n else \
        (np.zeros(1, dtype=np.int64), np.zeros(1, dtype=np.int64))
    ok = w <= instance.capacity
    opt = int(np.where(ok, p, -1).max())
    outs = []
    for mask in np.flatnonzero(ok & (p == opt)):
        outs.append(frozenset(i for i in range(n) if mask >> i & 1))
    return opt, outs
