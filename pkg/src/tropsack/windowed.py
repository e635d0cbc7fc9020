"""Randomized banded dynamic programs.

A random permutation concentrates the partial weight (or profit) of any
fixed solution around its linear interpolation, so each DP row only needs
a band of width ~ 2*(ell + 4*sqrt(t*w_max*log(n*ell))) around the
interpolated center.  Output is a window of the profit (weight) sequence,
correct with probability at least 1 - 1/n per run; callers boost by
entrywise max (min) over repetitions.
"""

from __future__ import annotations

import math
from typing import Tuple

import numpy as np

from .core import (INF, KnapsackInstance, MonotoneSeq, NEG_INF,
                   NON_DECREASING, SeedCtx)
from .convolution.naive import INT_INF, _saturate
from .trace import BandDPNode, ChooseNode, EmptySetNode


def _delta(ell: int, scale: int, n: int) -> int:
    logterm = math.log(max(n * ell, 2))
    return ell + math.ceil(4.0 * math.sqrt(max(scale, 0) * logterm))


def _read_band(arr: np.ndarray, arr_lo: int, lo: int, hi: int, fill) -> np.ndarray:
    out = np.full(hi - lo + 1, fill, dtype=np.int64)
    s = max(lo, arr_lo)
    e = min(hi, arr_lo + len(arr) - 1)
    if s <= e:
        out[s - lo:e - lo + 1] = arr[s - arr_lo:e - arr_lo + 1]
    return out


def _entrywise(runs, op, sentinel, extend: bool):
    """Combine (seq, trace) runs entrywise over the union window.

    ``extend`` reads a run past its top index as its last value, matching
    the semantics of budget curves (constant once items are exhausted).
    """
    if len(runs) == 1:
        return runs[0]
    start = min(s.start for s, _ in runs)
    stop = max(s.stop for s, _ in runs)

    def read(s, k):
        if extend and k >= s.stop and len(s):
            return s.values[-1]
        return s[k]

    vals = []
    for k in range(start, stop):
        best = read(runs[0][0], k)
        for s, _ in runs[1:]:
            v = read(s, k)
            if op(v, best):
                best = v
        vals.append(best)
    seq = MonotoneSeq.unsafe(tuple(vals), start, NON_DECREASING, sentinel)
    return seq, ChooseNode(list(runs), extend=extend)


def combine_boosted(runs, maximize: bool):
    sentinel = NEG_INF if maximize else INF
    op = (lambda a, b: a > b) if maximize else (lambda a, b: a < b)
    return _entrywise(runs, op, sentinel, extend=maximize)


def banded_profit_window(instance: KnapsackInstance, t: int, ell: int,
                       seed: SeedCtx, boost: int = 1, ids=None
                       ) -> Tuple[MonotoneSeq, object]:
    """Profit sequence on [t-ell, t+ell] (clamped at 0), Monte Carlo."""
    if not (2 <= ell <= t):
        raise ValueError("need 2 <= ell <= t")
    lo_out, hi_out = max(0, t - ell), t + ell
    if instance.n == 0:
        seq = MonotoneSeq([0] * (hi_out - lo_out + 1), lo_out,
                          NON_DECREASING, NEG_INF, validate=False)
        return seq, EmptySetNode()
    runs = []
    for r in range(boost):
        runs.append(_banded_profit_once(instance, t, ell, seed.child(r), ids))
    return combine_boosted(runs, maximize=True)


def _banded_profit_once(instance, t, ell, seed, ids):
    w = instance.weights
    p = instance.profits
    idarr = np.arange(instance.n) if ids is None else np.asarray(ids)
    n = instance.n
    rng = seed.generator()
    sigma = rng.permutation(n)
    delta = _delta(ell, t * instance.w_max, n)
    hi_cap = t + ell
    band_lo = np.zeros(n + 1, dtype=np.int64)
    prev = np.full(1, 0, dtype=np.int64)  # row 0: only index 0 = 0
    prev_lo = 0
    taken_rows = []
    for r in range(1, n + 1):
        c = (r * t) // n
        lo = max(0, c - delta)
        hi = min(c + delta, hi_cap)
        pos = int(sigma[r - 1])
        wi, pi = int(w[pos]), int(p[pos])
        stay = _read_band(prev, prev_lo, lo, hi, -INT_INF)
        take = _saturate(_read_band(prev, prev_lo, lo - wi, hi - wi,
                                    -INT_INF) + pi)
        cur = np.maximum(stay, take)
        taken_rows.append(take > stay)
        band_lo[r] = lo
        prev, prev_lo = cur, lo
    pre_vals = [int(v) if v > -INT_INF else NEG_INF for v in prev]
    pre_final = MonotoneSeq(pre_vals, prev_lo, "unknown", NEG_INF,
                            validate=False)
    final = prev.copy()
    np.maximum.accumulate(final, out=final)
    w_all = int(w.sum())
    p_all = int(p.sum())
    all_applied = False
    if w_all <= prev_lo + len(final) - 1:
        j0 = max(w_all, prev_lo)
        final[j0 - prev_lo:] = p_all
        all_applied = True
    lo_out, hi_out = max(0, t - ell), t + ell
    vals = _read_band(final, prev_lo, lo_out, hi_out, -INT_INF)
    seq = MonotoneSeq([int(v) if v > -INT_INF else NEG_INF for v in vals],
                      lo_out, NON_DECREASING, NEG_INF, validate=False)
    node = BandDPNode("profit", sigma, w, p, idarr, band_lo, taken_rows,
                      pre_final,
                      tuple(int(i) for i in idarr) if all_applied else None,
                      p_all if all_applied else None)
    return seq, node


def banded_weight_window(instance: KnapsackInstance, v: int, ell: int,
                       seed: SeedCtx, boost: int = 1, ids=None
                       ) -> Tuple[MonotoneSeq, object]:
    """Weight sequence on [v-ell, v+ell] (clamped at 0), Monte Carlo."""
    if not (2 <= ell <= v):
        raise ValueError("need 2 <= ell <= v")
    lo_out, hi_out = max(0, v - ell), v + ell
    if instance.n == 0:
        vals = [0 if k == 0 else INF for k in range(lo_out, hi_out + 1)]
        seq = MonotoneSeq(vals, lo_out, NON_DECREASING, INF, validate=False)
        return seq, EmptySetNode()
    runs = []
    for r in range(boost):
        runs.append(_banded_weight_once(instance, v, ell, seed.child(r), ids))
    return combine_boosted(runs, maximize=False)


def _banded_weight_once(instance, v, ell, seed, ids):
    w = instance.weights
    p = instance.profits
    idarr = np.arange(instance.n) if ids is None else np.asarray(ids)
    n = instance.n
    rng = seed.generator()
    sigma = rng.permutation(n)
    delta = _delta(ell, v * instance.p_max, n)
    band_lo = np.zeros(n + 1, dtype=np.int64)
    prev = np.zeros(1, dtype=np.int64)
    prev_lo = 0
    taken_rows = []
    for r in range(1, n + 1):
        c = (r * v) // n
        lo = max(0, c - delta)
        # no upper clip: the suffix-min pass pulls weights down from
        # profit indices beyond the output window
        hi = c + delta
        pos = int(sigma[r - 1])
        wi, pi = int(w[pos]), int(p[pos])
        stay = _read_band(prev, prev_lo, lo, hi, INT_INF)
        take = _saturate(_read_band(prev, prev_lo, lo - pi, hi - pi,
                                    INT_INF) + wi)
        cur = np.minimum(stay, take)
        taken_rows.append(take < stay)
        band_lo[r] = lo
        prev, prev_lo = cur, lo
    pre_vals = [int(x) if x < INT_INF else INF for x in prev]
    pre_final = MonotoneSeq(pre_vals, prev_lo, "unknown", INF, validate=False)
    final = prev.copy()
    final = np.minimum.accumulate(final[::-1])[::-1]
    lo_out, hi_out = max(0, v - ell), v + ell
    vals = _read_band(final, prev_lo, lo_out, hi_out, INT_INF)
    out = []
    for k, x in zip(range(lo_out, hi_out + 1), vals):
        if k == 0:
            out.append(0)
        else:
            out.append(int(x) if x < INT_INF else INF)
    seq = MonotoneSeq(out, lo_out, NON_DECREASING, INF, validate=False)
    node = BandDPNode("weight", sigma, w, p, idarr, band_lo, taken_rows,
                      pre_final)
    return seq, node
