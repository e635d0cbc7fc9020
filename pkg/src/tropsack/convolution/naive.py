"""Quadratic tropical convolution baselines and the small-range FFT method.

These are the definitional oracles everything faster is checked against.
"""

from __future__ import annotations

import numpy as np

from ..core import (INF, NEG_INF, MonotoneSeq, NON_DECREASING,
                    NON_INCREASING, UNKNOWN, check_value)

# int64 sentinels; finite payloads entering tropical ops are capped at
# 2**59 so a sentinel plus any finite value stays beyond the saturation
# threshold and two sentinels stay below 2**63.
INT_INF = 1 << 61
_SAT = 1 << 60
_OP_LIMIT = 1 << 59


def _saturate(s: np.ndarray) -> np.ndarray:
    """Collapse any sentinel-contaminated sum back onto the sentinels."""
    s[s >= _SAT] = INT_INF
    s[s <= -_SAT] = -INT_INF
    return s


def _as_arrays(a, default_sentinel=None):
    if isinstance(a, MonotoneSeq):
        arr, start = a.to_array(INT_INF), a.start
    else:
        vals = [check_value(v) for v in a]
        arr = np.empty(len(vals), dtype=np.int64)
        for i, v in enumerate(vals):
            arr[i] = INT_INF if v == INF else (-INT_INF if v == NEG_INF else v)
        start = 0
    fin = np.abs(arr) < INT_INF
    if fin.any() and int(np.abs(arr[fin]).max()) >= _OP_LIMIT:
        raise OverflowError("entries too large for tropical convolution")
    return arr, start


def _from_array(arr, start, direction, sentinel):
    vals = arr.tolist()
    for i in np.flatnonzero(arr >= INT_INF):
        vals[i] = INF
    for i in np.flatnonzero(arr <= -INT_INF):
        vals[i] = NEG_INF
    return MonotoneSeq.unsafe(tuple(vals), start, direction, sentinel)


def _conv_direction(a, b, kind):
    da = a.direction if isinstance(a, MonotoneSeq) else UNKNOWN
    db = b.direction if isinstance(b, MonotoneSeq) else UNKNOWN
    if da == db and da in (NON_DECREASING, NON_INCREASING):
        return da
    return UNKNOWN


def minplus_naive(a, b) -> MonotoneSeq:
    """C[k] = min_{i+j=k} A[i]+B[j] over in-bounds pairs, O(|A||B|)."""
    arr_a, sa = _as_arrays(a, INF)
    arr_b, sb = _as_arrays(b, INF)
    if len(arr_a) == 0 or len(arr_b) == 0:
        from ..core import empty_seq
        return empty_seq(_conv_direction(a, b, "min"), INF)
    n, m = len(arr_a), len(arr_b)
    out = np.full(n + m - 1, INT_INF, dtype=np.int64)
    if n < m:
        arr_a, arr_b, n, m = arr_b, arr_a, m, n
    clean = not (np.abs(arr_a) >= INT_INF).any() and \
        not (np.abs(arr_b) >= INT_INF).any()
    if clean:
        for j in range(m):
            np.minimum(out[j:j + n], arr_a + arr_b[j], out=out[j:j + n])
    else:
        for j in range(m):
            s = _saturate(arr_a + arr_b[j])
            np.minimum(out[j:j + n], s, out=out[j:j + n])
    return _from_array(out, sa + sb, _conv_direction(a, b, "min"), INF)


def maxplus_naive(a, b) -> MonotoneSeq:
    """C[k] = max_{i+j=k} A[i]+B[j]; equals -minplus(-A,-B) exactly."""
    arr_a, sa = _as_arrays(a, NEG_INF)
    arr_b, sb = _as_arrays(b, NEG_INF)
    if len(arr_a) == 0 or len(arr_b) == 0:
        from ..core import empty_seq
        return empty_seq(_conv_direction(a, b, "max"), NEG_INF)
    n, m = len(arr_a), len(arr_b)
    out = np.full(n + m - 1, -INT_INF, dtype=np.int64)
    if n < m:
        arr_a, arr_b, n, m = arr_b, arr_a, m, n
    clean = not (np.abs(arr_a) >= INT_INF).any() and \
        not (np.abs(arr_b) >= INT_INF).any()
    if clean:
        for j in range(m):
            np.maximum(out[j:j + n], arr_a + arr_b[j], out=out[j:j + n])
    else:
        for j in range(m):
            s = _saturate(arr_a + arr_b[j])
            np.maximum(out[j:j + n], s, out=out[j:j + n])
    return _from_array(out, sa + sb, _conv_direction(a, b, "max"), NEG_INF)


def minplus_counting_fft(a, b, m: int) -> MonotoneSeq:
    """Min-plus via value-indexed indicator polynomials, O(n*m log) time.

    Worthwhile only for small value ranges; used as the small-M fallback.
    """
    from .exactpoly import exact_convolve

    arr_a, sa = _as_arrays(a, INF)
    arr_b, sb = _as_arrays(b, INF)
    if len(arr_a) == 0 or len(arr_b) == 0:
        from ..core import empty_seq
        return empty_seq(_conv_direction(a, b, "min"), INF)
    for arr in (arr_a, arr_b):
        fin = arr[arr < INT_INF]
        if fin.size and (fin.min() < 0 or fin.max() > m):
            raise ValueError("entries outside [0, M]")
    stride = 2 * m + 1
    ia = np.zeros(len(arr_a) * stride, dtype=np.int64)
    ib = np.zeros(len(arr_b) * stride, dtype=np.int64)
    mask_a = arr_a < INT_INF
    mask_b = arr_b < INT_INF
    ia[np.nonzero(mask_a)[0] * stride + arr_a[mask_a]] = 1
    ib[np.nonzero(mask_b)[0] * stride + arr_b[mask_b]] = 1
    prod = exact_convolve(ia, ib)
    nc = len(arr_a) + len(arr_b) - 1
    out = np.full(nc, INT_INF, dtype=np.int64)
    # first nonzero value slot per output index k is the min sum
    padded = np.zeros(nc * stride, dtype=np.int64)
    padded[:len(prod)] = prod[:nc * stride]
    grid = padded.reshape(nc, stride)
    nz = grid != 0
    has = nz.any(axis=1)
    out[has] = nz[has].argmax(axis=1)
    return _from_array(out, sa + sb, _conv_direction(a, b, "min"), INF)
