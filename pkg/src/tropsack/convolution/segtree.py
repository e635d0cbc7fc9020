"""Lazy range-chmin segment tree.

Only two operations are needed: apply ``min`` with a constant over a range,
and read out every leaf at the end.  Chmin tags compose by taking minima,
so a tag per node suffices and the final leaf value is the minimum tag
along its root path.
"""

from __future__ import annotations

import numpy as np


class ChminSegmentTree:
    def __init__(self, size: int, init_value: int):
        self.n = 1
        while self.n < max(size, 1):
            self.n *= 2
        self.size = size
        self.tag = np.full(2 * self.n, init_value, dtype=np.int64)

    def range_chmin(self, lo: int, hi: int, value: int):
        """Apply tag[i] = min(tag[i], value) for leaves lo..hi inclusive."""
        if lo > hi:
            return
        lo += self.n
        hi += self.n + 1
        tag = self.tag
        while lo < hi:
            if lo & 1:
                if value < tag[lo]:
                    tag[lo] = value
                lo += 1
            if hi & 1:
                hi -= 1
                if value < tag[hi]:
                    tag[hi] = value
            lo >>= 1
            hi >>= 1

    def read_all(self) -> np.ndarray:
        """Push tags level by level; leaf value = min tag on root path."""
        acc = self.tag[1:2].copy()
        level = 1
        while level < self.n:
            level *= 2
            acc = np.minimum(np.repeat(acc, 2), self.tag[level:2 * level])
        return acc[:self.size]
