"""Domain types and monotone-sequence algebra.

Everything here is immutable after construction and safe to share across
threads.  Sequences carry absolute start indices so that subarrays produced
by :func:`restrict` compose without re-indexing bookkeeping.

Extended integers are plain Python ints plus the two float infinities.
Finite values are validated to stay below ``VALUE_LIMIT`` so that internal
int64 workspaces never overflow silently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

INF = float("inf")
NEG_INF = float("-inf")

# Finite magnitudes must stay below this so int64 engine workspaces
# (sentinel 2**61 plus one addition) cannot wrap.
VALUE_LIMIT = 1 << 60

NON_DECREASING = "non-decreasing"
NON_INCREASING = "non-increasing"
UNKNOWN = "unknown"

_DIRECTIONS = (NON_DECREASING, NON_INCREASING, UNKNOWN)


def is_finite(v) -> bool:
    return v != INF and v != NEG_INF


def check_value(v):
    """Validate one extended-integer entry, returning it unchanged."""
    if v == INF or v == NEG_INF:
        return v
    if not isinstance(v, (int, np.integer)):
        raise TypeError(f"sequence entries must be int or +/-inf, got {v!r}")
    v = int(v)
    if abs(v) >= VALUE_LIMIT:
        raise OverflowError(f"finite entry {v} exceeds VALUE_LIMIT")
    return v


class SeqError(ValueError):
    """Raised for malformed sequences or invalid sequence operations."""


@dataclass(frozen=True)
class Item:
    """A knapsack item.  ``internal`` marks dummy items that are allowed
    to have zero weight or zero profit."""

    weight: int
    profit: int
    internal: bool = False

    def __post_init__(self):
        if not isinstance(self.weight, (int, np.integer)) or isinstance(self.weight, bool):
            raise TypeError("weight must be an integer")
        if not isinstance(self.profit, (int, np.integer)) or isinstance(self.profit, bool):
            raise TypeError("profit must be an integer")
        object.__setattr__(self, "weight", int(self.weight))
        object.__setattr__(self, "profit", int(self.profit))
        if self.internal:
            if self.weight < 0 or self.profit < 0:
                raise ValueError("internal items need non-negative weight/profit")
        else:
            if self.weight < 1:
                raise ValueError(f"item weight must be >= 1, got {self.weight}")
            if self.profit < 1:
                raise ValueError(f"item profit must be >= 1, got {self.profit}")
        if self.weight >= VALUE_LIMIT or self.profit >= VALUE_LIMIT:
            raise OverflowError("item parameters exceed VALUE_LIMIT")


class KnapsackInstance:
    """A (multi-)set of items plus a capacity, with cached parameters."""

    __slots__ = ("items", "capacity", "n", "w_max", "p_max", "_weights", "_profits")

    def __init__(self, items: Sequence[Item], capacity: int):
        if capacity < 0:
            raise ValueError("capacity must be non-negative")
        self.items = tuple(items)
        self.capacity = int(capacity)
        self.n = len(self.items)
        self.w_max = max((it.weight for it in self.items), default=0)
        self.p_max = max((it.profit for it in self.items), default=0)
        self._weights = None
        self._profits = None

    @property
    def weights(self) -> np.ndarray:
        if self._weights is None:
            self._weights = np.array([it.weight for it in self.items], dtype=np.int64)
        return self._weights

    @property
    def profits(self) -> np.ndarray:
        if self._profits is None:
            self._profits = np.array([it.profit for it in self.items], dtype=np.int64)
        return self._profits

    def total_profit(self) -> int:
        return int(sum(it.profit for it in self.items))

    def total_weight(self) -> int:
        return int(sum(it.weight for it in self.items))

    def subset(self, indices: Iterable[int]) -> "KnapsackInstance":
        return KnapsackInstance([self.items[i] for i in indices], self.capacity)

    def __repr__(self):
        return (f"KnapsackInstance(n={self.n}, t={self.capacity}, "
                f"w_max={self.w_max}, p_max={self.p_max})")


@dataclass(frozen=True)
class Solution:
    """A chosen subset of item indices with cached totals."""

    indices: frozenset
    total_weight: int
    total_profit: int

    @staticmethod
    def from_indices(instance: KnapsackInstance, indices: Iterable[int]) -> "Solution":
        idx = frozenset(int(i) for i in indices)
        w = sum(instance.items[i].weight for i in idx)
        p = sum(instance.items[i].profit for i in idx)
        return Solution(idx, w, p)

    def verify(self, instance: KnapsackInstance) -> bool:
        w = sum(instance.items[i].weight for i in self.indices)
        p = sum(instance.items[i].profit for i in self.indices)
        return w == self.total_weight and p == self.total_profit


EMPTY_SOLUTION = Solution(frozenset(), 0, 0)


class SeedCtx:
    """Deterministic splittable randomness context.

    Child streams are derived from ``(seed, path)`` via numpy's
    ``SeedSequence`` spawn keys, so identical seed and path always produce
    identical random choices, independent of call order elsewhere.
    """

    __slots__ = ("seed", "path")

    def __init__(self, seed: int, path: tuple = ()):
        self.seed = int(seed) & ((1 << 64) - 1)
        self.path = tuple(int(p) for p in path)

    def child(self, *steps: int) -> "SeedCtx":
        return SeedCtx(self.seed, self.path + tuple(steps))

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(entropy=self.seed, spawn_key=self.path)
        return np.random.Generator(np.random.PCG64(ss))

    def __repr__(self):
        return f"SeedCtx(seed={self.seed}, path={self.path})"


class MonotoneSeq:
    """An integer sequence over an index window with an absolute start
    index, a monotonicity tag, and explicit out-of-window sentinel
    semantics (+inf for min-plus contexts, -inf for max-plus)."""

    __slots__ = ("start", "values", "direction", "sentinel")

    def __init__(self, values, start: int = 0, direction: str = UNKNOWN,
                 sentinel=NEG_INF, validate: bool = True):
        if direction not in _DIRECTIONS:
            raise SeqError(f"bad direction {direction!r}")
        if sentinel not in (INF, NEG_INF):
            raise SeqError("sentinel must be +inf or -inf")
        vals = tuple(check_value(v) for v in values)
        self.start = int(start)
        self.values = vals
        self.direction = direction
        self.sentinel = sentinel
        if validate and direction != UNKNOWN:
            self._check_direction()

    @staticmethod
    def unsafe(values: tuple, start: int, direction: str, sentinel) -> "MonotoneSeq":
        """Internal fast path: entries already validated upstream."""
        obj = MonotoneSeq.__new__(MonotoneSeq)
        obj.start = start
        obj.values = values if isinstance(values, tuple) else tuple(values)
        obj.direction = direction
        obj.sentinel = sentinel
        return obj

    def _check_direction(self):
        finite = [v for v in self.values if is_finite(v)]
        if self.direction == NON_DECREASING:
            ok = all(a <= b for a, b in zip(finite, finite[1:]))
        else:
            ok = all(a >= b for a, b in zip(finite, finite[1:]))
        if not ok:
            raise SeqError(f"values are not {self.direction}")

    # -- basic access ---------------------------------------------------

    def __len__(self):
        return len(self.values)

    @property
    def stop(self) -> int:
        """One past the last valid absolute index."""
        return self.start + len(self.values)

    def __getitem__(self, idx: int):
        """Read at an absolute index; out-of-window reads yield the sentinel."""
        off = idx - self.start
        if 0 <= off < len(self.values):
            return self.values[off]
        return self.sentinel

    def __iter__(self):
        return iter(self.values)

    def __eq__(self, other):
        if not isinstance(other, MonotoneSeq):
            return NotImplemented
        return self.start == other.start and self.values == other.values

    def __repr__(self):
        shown = list(self.values[:8]) + (["..."] if len(self.values) > 8 else [])
        return (f"MonotoneSeq(start={self.start}, len={len(self.values)}, "
                f"{self.direction}, {shown})")

    def indices(self) -> range:
        return range(self.start, self.stop)

    def is_empty(self) -> bool:
        return len(self.values) == 0

    def with_direction(self, direction: str) -> "MonotoneSeq":
        return MonotoneSeq(self.values, self.start, direction, self.sentinel)

    def to_array(self, inf_value: int) -> np.ndarray:
        """int64 copy with +/-inf entries replaced by ``+/-inf_value``."""
        out = np.empty(len(self.values), dtype=np.int64)
        for i, v in enumerate(self.values):
            if v == INF:
                out[i] = inf_value
            elif v == NEG_INF:
                out[i] = -inf_value
            else:
                out[i] = v
        return out


def empty_seq(direction: str = NON_DECREASING, sentinel=NEG_INF) -> MonotoneSeq:
    return MonotoneSeq((), 0, direction, sentinel)


# ---------------------------------------------------------------------------
# Instance normalization


class InstanceError(ValueError):
    pass


@dataclass(frozen=True)
class NormalizeResult:
    """Outcome of :func:`normalize`.

    ``instance`` holds the residual items (empty when the answer is
    trivial); ``kept`` maps its item positions back to the original
    instance.  ``trivial_opt``/``trivial_solution`` are set when every
    residual item fits, in which case the residual instance is empty.
    """

    instance: KnapsackInstance
    kept: tuple
    trivial_opt: Optional[int] = None
    trivial_solution: Optional[Solution] = None

    @property
    def is_trivial(self) -> bool:
        return self.trivial_opt is not None


def normalize(instance: KnapsackInstance) -> NormalizeResult:
    """Drop items heavier than the capacity; detect the all-fit case.

    After this, either the answer is trivial (sum of residual profits) or
    the residual instance satisfies w_max <= t < n * w_max.
    """
    t = instance.capacity
    for it in instance.items:
        if not it.internal and (it.weight <= 0 or it.profit <= 0):
            raise InstanceError("items must have positive weight and profit")
    kept = tuple(i for i, it in enumerate(instance.items) if it.weight <= t)
    residual = [instance.items[i] for i in kept]
    sub = KnapsackInstance(residual, t)
    if sub.n == 0 or t >= sub.n * sub.w_max:
        sol = Solution.from_indices(instance, kept)
        return NormalizeResult(KnapsackInstance([], t), (), sub.total_profit(), sol)
    return NormalizeResult(sub, kept)


# ---------------------------------------------------------------------------
# Sequence operations


def _bisect_by(seq_vals, lo, hi, pred):
    """First offset in [lo, hi) where pred(value) is False; hi if none."""
    while lo < hi:
        mid = (lo + hi) // 2
        if pred(seq_vals[mid]):
            lo = mid + 1
        else:
            hi = mid
    return lo


def restrict(seq: MonotoneSeq, index_interval, value_interval) -> MonotoneSeq:
    """Maximal contiguous subarray with indices in ``index_interval`` and
    finite values in ``value_interval`` (both inclusive pairs).

    Requires a known monotone direction; runs two binary searches.  The
    result keeps absolute start coordinates.
    """
    if seq.direction == UNKNOWN:
        raise SeqError("restrict needs a monotone direction")
    ilo, ihi = index_interval
    vlo, vhi = value_interval
    lo = max(int(math.ceil(ilo)), seq.start) - seq.start
    hi = min(int(math.floor(ihi)), seq.stop - 1) - seq.start
    if lo > hi:
        return empty_seq(seq.direction, seq.sentinel)
    vals = seq.values
    if seq.direction == NON_DECREASING:
        # values < vlo form a prefix, values > vhi a suffix (infinities sort
        # as their limits)
        first = _bisect_by(vals, lo, hi + 1, lambda v: v < vlo)
        last = _bisect_by(vals, lo, hi + 1, lambda v: v <= vhi) - 1
    else:
        first = _bisect_by(vals, lo, hi + 1, lambda v: v > vhi)
        last = _bisect_by(vals, lo, hi + 1, lambda v: v >= vlo) - 1
    if first > last:
        return empty_seq(seq.direction, seq.sentinel)
    sub = vals[first:last + 1]
    if any(not is_finite(v) for v in sub):
        # infinities never lie in a finite value interval; monotone order
        # puts them at the ends, so trim them off
        lo2 = 0
        hi2 = len(sub)
        while lo2 < hi2 and not is_finite(sub[lo2]):
            lo2 += 1
        while hi2 > lo2 and not is_finite(sub[hi2 - 1]):
            hi2 -= 1
        sub = sub[lo2:hi2]
        first += lo2
        if not sub:
            return empty_seq(seq.direction, seq.sentinel)
    return MonotoneSeq.unsafe(sub, seq.start + first, seq.direction,
                              seq.sentinel)


def prefix_maxima(seq) -> MonotoneSeq:
    """Running maxima; the output is non-decreasing by construction."""
    if isinstance(seq, MonotoneSeq):
        start, vals, sentinel = seq.start, seq.values, seq.sentinel
    else:
        start, vals, sentinel = 0, tuple(seq), NEG_INF
    out = []
    best = NEG_INF
    for v in vals:
        check_value(v)
        if v > best:
            best = v
        out.append(best)
    return MonotoneSeq.unsafe(tuple(out), start, NON_DECREASING, sentinel)


def negate_shift(seq: MonotoneSeq, m: int) -> MonotoneSeq:
    """Entrywise ``m - value``; flips direction and sentinel. Involution."""
    out = []
    for v in seq.values:
        if v == INF:
            out.append(NEG_INF)
        elif v == NEG_INF:
            out.append(INF)
        else:
            if v < 0 or v > m:
                raise SeqError(f"entry {v} outside [0, {m}]")
            out.append(m - v)
    if seq.direction == NON_DECREASING:
        direction = NON_INCREASING
    elif seq.direction == NON_INCREASING:
        direction = NON_DECREASING
    else:
        direction = UNKNOWN
    sentinel = NEG_INF if seq.sentinel == INF else INF
    return MonotoneSeq.unsafe(tuple(out), seq.start, direction, sentinel)


def reverse_index(seq: MonotoneSeq) -> MonotoneSeq:
    """Reverse the index axis: entry at absolute i moves to start+stop-1-i.

    Composing twice is the identity; non-decreasing and non-increasing
    swap roles.
    """
    if seq.direction == NON_DECREASING:
        direction = NON_INCREASING
    elif seq.direction == NON_INCREASING:
        direction = NON_DECREASING
    else:
        direction = UNKNOWN
    return MonotoneSeq(tuple(reversed(seq.values)), seq.start, direction,
                       seq.sentinel, validate=False)
