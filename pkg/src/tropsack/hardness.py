"""Bounded min-plus convolution verification and its knapsack gadgets.

An MPV instance asks whether c[k] <= a[i] + b[j] for all i + j = k, with
all entries in {0..n}.  Monotonizing (adding i*n, j*n, k*n) and encoding
each array entry as one item produces knapsack instances whose optimum
crosses a sharp threshold exactly when the verification condition fails.
These doubles as adversarial fixtures: the two gadgets sit at opposite
parameter extremes (small weights / large profits and vice versa).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Item, KnapsackInstance


@dataclass(frozen=True)
class MPVInstance:
    a: tuple
    b: tuple
    c: tuple

    def __post_init__(self):
        n = len(self.a)
        if len(self.b) != n or len(self.c) != 2 * n - 1:
            raise ValueError("need |a| = |b| = n and |c| = 2n-1")
        for arr in (self.a, self.b, self.c):
            for v in arr:
                if not (0 <= v <= n):
                    raise ValueError(f"entry {v} outside [0, {n}]")

    @property
    def n(self) -> int:
        return len(self.a)

    def monotonized(self):
        """A[i] = a[i] + i*n etc.; non-decreasing, entries O(n^2)."""
        n = self.n
        big_a = tuple(v + i * n for i, v in enumerate(self.a))
        big_b = tuple(v + j * n for j, v in enumerate(self.b))
        big_c = tuple(v + k * n for k, v in enumerate(self.c))
        return big_a, big_b, big_c


def verify_naive(mpv: MPVInstance) -> bool:
    """Direct O(n^2) check of c[k] <= min_{i+j=k} a[i] + b[j]."""
    a = np.asarray(mpv.a, dtype=np.int64)
    b = np.asarray(mpv.b, dtype=np.int64)
    c = np.asarray(mpv.c, dtype=np.int64)
    n = len(a)
    for i in range(n):
        if (c[i:i + n] > a[i] + b).any():
            return False
    return True


def gadget_small_weights(mpv: MPVInstance) -> KnapsackInstance:
    """Weights Theta(n), profits Theta(n^2); verification holds iff the
    optimum stays at or below 112*n^2."""
    n = mpv.n
    if n < 2:
        raise ValueError("gadget needs n >= 2")
    big_a, big_b, big_c = mpv.monotonized()
    items = []
    for i, v in enumerate(big_a):
        items.append(Item(5 * n - i, 2 * n * n - v))
    for j, v in enumerate(big_b):
        items.append(Item(10 * n - j, 10 * n * n - v))
    for k, v in enumerate(big_c):
        items.append(Item(20 * n + k, 100 * n * n + v))
    return KnapsackInstance(items, 35 * n)


def gadget_small_weights_threshold(n: int) -> int:
    return 112 * n * n


def gadget_small_profits(mpv: MPVInstance) -> KnapsackInstance:
    """Index/value-swapped variant: weights Theta(n^2), profits Theta(n);
    verification holds iff the optimum stays strictly below 112*n."""
    n = mpv.n
    if n < 2:
        raise ValueError("gadget needs n >= 2")
    big_a, big_b, big_c = mpv.monotonized()
    items = []
    for i, v in enumerate(big_a):
        items.append(Item(5 * n * n + v, 2 * n + i))
    for j, v in enumerate(big_b):
        items.append(Item(10 * n * n + v, 10 * n + j))
    for k, v in enumerate(big_c):
        items.append(Item(20 * n * n - v, 100 * n - k))
    return KnapsackInstance(items, 35 * n * n - 1)


def gadget_small_profits_threshold(n: int) -> int:
    return 112 * n


def parse_mpv(text: str) -> MPVInstance:
    """Text format: first line n; then a, b, c as whitespace-separated
    integers (newlines between the arrays are optional)."""
    tokens = text.split()
    if not tokens:
        raise ValueError("empty MPV input")
    n = int(tokens[0])
    need = 1 + n + n + (2 * n - 1)
    if len(tokens) != need:
        raise ValueError(f"expected {need} integers, got {len(tokens)}")
    vals = [int(tok) for tok in tokens[1:]]
    return MPVInstance(tuple(vals[:n]), tuple(vals[n:2 * n]),
                       tuple(vals[2 * n:]))


def write_mpv(mpv: MPVInstance) -> str:
    return "\n".join([str(mpv.n),
                      " ".join(map(str, mpv.a)),
                      " ".join(map(str, mpv.b)),
                      " ".join(map(str, mpv.c))]) + "\n"


def gen_mpv_instance(n: int, seed, satisfied=None) -> MPVInstance:
    """Random MPV instance; ``satisfied`` biases c toward holding or
    violating the condition (None mixes both)."""
    rng = seed.generator()
    a = tuple(int(v) for v in rng.integers(0, n + 1, n))
    b = tuple(int(v) for v in rng.integers(0, n + 1, n))
    true_min = [min(a[i] + b[k - i]
                    for i in range(max(0, k - n + 1), min(n, k + 1)))
                for k in range(2 * n - 1)]
    if satisfied is None:
        satisfied = bool(rng.integers(0, 2))
    c = []
    for k in range(2 * n - 1):
        cap = min(true_min[k], n)
        lo = max(0, cap - int(rng.integers(0, 3)))
        c.append(int(lo))
    if not satisfied:
        k = int(rng.integers(0, 2 * n - 1))
        if true_min[k] < n:
            c[k] = int(rng.integers(true_min[k] + 1, n + 1))
        else:
            # min already at the cap; violate elsewhere if possible
            below = [j for j in range(2 * n - 1) if true_min[j] < n]
            if below:
                k = below[int(rng.integers(0, len(below)))]
                c[k] = int(rng.integers(true_min[k] + 1, n + 1))
    return MPVInstance(a, b, tuple(c))
