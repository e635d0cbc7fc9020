"""Max-plus convolution where only one input is monotone.

Divide and conquer on equal-length inputs: the top half of the monotone
sequence recurses against both halves of the arbitrary one, while the
bottom half is convolved against prefix-maxima of the halves (which are
monotone, so the two-monotone engine applies).  Odd lengths peel the last
entry.  Cost satisfies T1(n) <= 2*T1(n/2) + O(T2(n)).
"""

from __future__ import annotations

import numpy as np

from ..core import (INF, MonotoneSeq, NEG_INF, NON_DECREASING, SeedCtx,
                    SeqError)
from .naive import INT_INF, _as_arrays, _from_array, _saturate
from .engine import monotone_maxplus_rect, _verified_direction

_BASE_LEN = 64


def _maxplus_arrays(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n, m = len(a), len(b)
    out = np.full(n + m - 1, -INT_INF, dtype=np.int64)
    if n < m:
        a, b, n, m = b, a, m, n
    for j in range(m):
        s = _saturate(a + b[j])
        np.maximum(out[j:j + n], s, out=out[j:j + n])
    return out


def _pm(arr: np.ndarray) -> np.ndarray:
    return np.maximum.accumulate(arr)


def _engine_maxplus(a: np.ndarray, b: np.ndarray, m: int, seed: SeedCtx,
                    method: str) -> np.ndarray:
    sa = MonotoneSeq([int(v) if -INT_INF < v < INT_INF else (INF if v >= INT_INF else NEG_INF)
                      for v in a], 0, NON_DECREASING, NEG_INF, validate=False)
    sb = MonotoneSeq([int(v) if -INT_INF < v < INT_INF else (INF if v >= INT_INF else NEG_INF)
                      for v in b], 0, NON_DECREASING, NEG_INF, validate=False)
    return monotone_maxplus_rect(sa, sb, m, seed, method=method).to_array(INT_INF)


def _combine_max(out: np.ndarray, part: np.ndarray, offset: int):
    lo = offset
    hi = offset + len(part)
    np.maximum(out[lo:hi], part, out=out[lo:hi])


def _one_monotone(a: np.ndarray, b: np.ndarray, m: int, seed: SeedCtx,
                  method: str, depth: int) -> np.ndarray:
    n = len(a)
    if n <= _BASE_LEN:
        return _maxplus_arrays(a, b)
    if n % 2 == 1:
        core = _one_monotone(a[:-1], b[:-1], m, seed.child(depth, 0), method,
                             depth + 1)
        out = np.full(2 * n - 1, -INT_INF, dtype=np.int64)
        out[:len(core)] = core
        # cross terms with the peeled last entries
        tail_a = _saturate(a[-1] + b)
        tail_b = _saturate(b[-1] + a)
        _combine_max(out, tail_a, n - 1)
        _combine_max(out, tail_b, n - 1)
        return out
    half = n // 2
    a1, a2 = a[:half], a[half:]
    b1, b2 = b[:half], b[half:]
    pm1 = _pm(b1)
    pm2 = _pm(b2)
    c11 = _engine_maxplus(a1, pm1, m, seed.child(depth, 1), method)
    c12 = _engine_maxplus(a1, pm2, m, seed.child(depth, 2), method)
    c21 = _one_monotone(a2, b1, m, seed.child(depth, 3), method, depth + 1)
    c22 = _one_monotone(a2, b2, m, seed.child(depth, 4), method, depth + 1)
    out = np.full(2 * n - 1, -INT_INF, dtype=np.int64)
    _combine_max(out, c11, 0)
    _combine_max(out, c12, half)
    _combine_max(out, c21, half)
    _combine_max(out, c22, 2 * half)
    return out


def one_monotone_maxplus(a: MonotoneSeq, b, m: int, seed: SeedCtx,
                         method: str = "auto") -> MonotoneSeq:
    """Max-plus convolution of monotone non-decreasing ``a`` with an
    arbitrary equal-length ``b``; entries of both in [0, m]."""
    if a.direction != NON_DECREASING:
        a = MonotoneSeq(a.values, a.start, NON_DECREASING, a.sentinel)  # validates
    arr_a, sa = _as_arrays(a, NEG_INF)
    arr_b, sb = _as_arrays(b, NEG_INF)
    if len(arr_a) != len(arr_b):
        raise SeqError("one_monotone_maxplus needs equal-length inputs")
    if len(arr_a) == 0:
        from ..core import empty_seq
        return empty_seq(NON_DECREASING, NEG_INF)
    for arr in (arr_a, arr_b):
        fin = arr[np.abs(arr) < INT_INF]
        if fin.size and (fin.min() < 0 or fin.max() > m):
            raise SeqError(f"entries outside [0, {m}]")
    out = _one_monotone(arr_a, arr_b, m, seed, method, 0)
    vals = _from_array(out, 0, "unknown", NEG_INF).values
    return MonotoneSeq(vals, sa + sb, _verified_direction(vals, NON_DECREASING),
                       NEG_INF, validate=False)
