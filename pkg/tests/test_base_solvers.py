import math

import numpy as np
import pytest

from tropsack import INF, Item, KnapsackInstance, SeedCtx
from tropsack.bellman import (bellman_profit_dp, bellman_weight_dp,
                              greedy_upper_bound)
from tropsack.bounded import bc_profit_bounded, bc_weight_bounded
from tropsack.core import normalize, restrict
from tropsack.harness.generators import gen_random_instance
from tropsack.harness.oracle import brute_force_opt
from tropsack.trace import reconstruct_items
from tropsack.windowed import banded_profit_window, banded_weight_window


def boost_for(n):
    return math.ceil(math.log2(max(n, 2))) + 3


class TestBellmanProfit:
    def test_empty_instance(self):
        seq, _ = bellman_profit_dp(KnapsackInstance([], 9), 4)
        assert seq.values == (0, 0, 0, 0, 0)

    def test_two_items_frozen(self):
        inst = KnapsackInstance([Item(2, 3), Item(3, 4)], 5)
        seq, _ = bellman_profit_dp(inst, 5)
        assert seq.values == (0, 0, 3, 4, 4, 7)

    def test_matches_brute_force(self):
        rng = np.random.default_rng(0)
        for trial in range(300):
            n = int(rng.integers(0, 15))
            inst = gen_random_instance(n, 12, 15, int(rng.integers(0, 40)),
                                       SeedCtx(trial))
            opt, _ = brute_force_opt(inst)
            seq, tr = bellman_profit_dp(inst, inst.capacity)
            assert seq[inst.capacity] == opt
            ids = reconstruct_items(tr, inst.capacity, opt)
            sol_p = sum(inst.items[i].profit for i in ids)
            sol_w = sum(inst.items[i].weight for i in ids)
            assert sol_p == opt and sol_w <= inst.capacity


class TestBellmanWeight:
    def test_empty_instance(self):
        seq, _ = bellman_weight_dp(KnapsackInstance([], 9), 2)
        assert seq.values == (0, INF, INF)

    def test_two_items_frozen(self):
        inst = KnapsackInstance([Item(2, 3), Item(3, 4)], 5)
        seq, _ = bellman_weight_dp(inst, 7)
        assert seq.values == (0, 2, 2, 2, 3, 5, 5, 5)

    def test_duality_with_profit_dp(self):
        rng = np.random.default_rng(1)
        for trial in range(300):
            n = int(rng.integers(0, 14))
            inst = gen_random_instance(n, 11, 13, int(rng.integers(0, 35)),
                                       SeedCtx(1000 + trial))
            pseq, _ = bellman_profit_dp(inst, inst.capacity)
            ub = n * 13 + 1
            wseq, _ = bellman_weight_dp(inst, ub)
            dual = max((v for v in range(ub + 1)
                        if wseq[v] != INF and wseq[v] <= inst.capacity),
                       default=0)
            assert dual == pseq[inst.capacity]


class TestGreedy:
    def test_prefix_plus_next(self):
        inst = KnapsackInstance([Item(2, 3), Item(3, 3)], 4)
        assert greedy_upper_bound(inst) == 6

    def test_single_item(self):
        assert greedy_upper_bound(KnapsackInstance([Item(1, 5)], 1)) == 5

    def test_sandwich_on_random(self):
        rng = np.random.default_rng(2)
        for trial in range(500):
            n = int(rng.integers(1, 15))
            inst = gen_random_instance(n, 10, 12, int(rng.integers(1, 40)),
                                       SeedCtx(2000 + trial))
            norm = normalize(inst)
            if norm.is_trivial:
                continue
            sub = norm.instance
            opt, _ = brute_force_opt(sub)
            g = greedy_upper_bound(sub)
            assert opt <= g <= opt + sub.p_max
            assert sub.p_max <= g <= sub.n * sub.p_max


class TestHexuWindows:
    def test_degenerate_band_is_exact(self):
        # tiny capacity forces the band to cover every index
        rng = np.random.default_rng(3)
        for trial in range(25):
            n = int(rng.integers(1, 12))
            t = int(rng.integers(4, 12))
            inst = gen_random_instance(n, max(2, t // 2), 9, t,
                                       SeedCtx(3000 + trial))
            ell = t
            seq, _ = banded_profit_window(inst, t, ell, SeedCtx(trial), boost=1)
            ref, _ = bellman_profit_dp(inst, t + ell)
            for k in seq.indices():
                assert seq[k] == ref[k]

    def test_profit_window_boosted_matches(self):
        rng = np.random.default_rng(4)
        for trial in range(30):
            n = int(rng.integers(1, 50))
            t = int(rng.integers(10, 500))
            inst = gen_random_instance(n, min(t, 25), 30, t,
                                       SeedCtx(4000 + trial))
            ell = int(rng.integers(2, t + 1))
            seq, tr = banded_profit_window(inst, t, ell, SeedCtx(trial),
                                         boost=boost_for(n))
            ref, _ = bellman_profit_dp(inst, t + ell)
            for k in seq.indices():
                assert seq[k] == ref[k], (trial, k)
            k = seq.stop - 1
            ids = reconstruct_items(tr, k, seq[k])
            assert sum(inst.items[i].profit for i in ids) == seq[k]
            assert sum(inst.items[i].weight for i in ids) <= k

    def test_weight_window_boosted_matches(self):
        rng = np.random.default_rng(5)
        for trial in range(30):
            n = int(rng.integers(1, 40))
            inst = gen_random_instance(n, 14, 22, 10 ** 6,
                                       SeedCtx(5000 + trial))
            total_p = sum(it.profit for it in inst.items)
            v = int(rng.integers(4, max(6, total_p + 8)))
            ell = int(rng.integers(2, v + 1))
            seq, tr = banded_weight_window(inst, v, ell, SeedCtx(trial),
                                         boost=boost_for(n))
            ref, _ = bellman_weight_dp(inst, v + ell)
            for k in seq.indices():
                assert seq[k] == ref[k], (trial, k)
            # unachievable profits surface as +inf exactly like the oracle
            fin = [k for k in seq.indices() if seq[k] != INF]
            if fin:
                k = fin[-1]
                ids = reconstruct_items(tr, k, seq[k])
                assert sum(inst.items[i].weight for i in ids) == seq[k]
                assert sum(inst.items[i].profit for i in ids) >= k

    def test_ell_out_of_range(self):
        inst = gen_random_instance(4, 5, 5, 10, SeedCtx(0))
        with pytest.raises(ValueError):
            banded_profit_window(inst, 10, 1, SeedCtx(0))
        with pytest.raises(ValueError):
            banded_weight_window(inst, 10, 11, SeedCtx(0))


class TestBoundedProfit:
    def test_v_zero_all_zeros(self):
        inst = gen_random_instance(6, 9, 9, 20, SeedCtx(1))
        seq, _ = bc_profit_bounded(inst, 20, 0, SeedCtx(2))
        assert set(seq.values) == {0}

    def test_single_item_shape(self):
        inst = KnapsackInstance([Item(4, 7)], 10)
        seq, _ = bc_profit_bounded(inst, 10, 9, SeedCtx(3), boost=4)
        assert seq.values == (0, 0, 0, 0, 7, 7, 7, 7, 7, 7, 7)

    def test_matches_bellman_restricted(self):
        rng = np.random.default_rng(6)
        for trial in range(60):
            n = int(rng.integers(0, 55))
            t = int(rng.integers(0, 380))
            v = int(rng.integers(0, 190))
            inst = gen_random_instance(n, 30, 40, t, SeedCtx(6000 + trial))
            seq, tr = bc_profit_bounded(inst, t, v, SeedCtx(trial),
                                        boost=boost_for(n))
            ref, _ = bellman_profit_dp(inst, t)
            want = restrict(ref, (0, t), (0, v))
            assert seq.values == want.values, trial
            if len(seq):
                assert seq.start == want.start
                k = seq.stop - 1
                ids = reconstruct_items(tr, k, seq[k])
                assert sum(inst.items[i].profit for i in ids) == seq[k]
                assert sum(inst.items[i].weight for i in ids) <= k


class TestBoundedWeight:
    def test_t_zero_only_empty_set(self):
        inst = gen_random_instance(5, 8, 8, 30, SeedCtx(4))
        seq, _ = bc_weight_bounded(inst, 6, 0, SeedCtx(5))
        assert seq.values[0] == 0 and len(seq) == 1

    def test_single_item_shape(self):
        inst = KnapsackInstance([Item(4, 3)], 10)
        seq, _ = bc_weight_bounded(inst, 6, 10, SeedCtx(6), boost=4)
        assert seq.values == (0, 4, 4, 4)  # profit 4.. unreachable trimmed

    def test_matches_bellman_restricted(self):
        rng = np.random.default_rng(7)
        for trial in range(60):
            n = int(rng.integers(0, 55))
            t = int(rng.integers(0, 280))
            v = int(rng.integers(0, 230))
            inst = gen_random_instance(n, 30, 40, t, SeedCtx(7000 + trial))
            seq, tr = bc_weight_bounded(inst, v, t, SeedCtx(trial),
                                        boost=boost_for(n))
            ref, _ = bellman_weight_dp(inst, v)
            want = restrict(ref, (0, v), (0, t))
            assert seq.values == want.values, trial
            if len(seq):
                assert seq.start == want.start

    def test_unbounded_value_equals_full_bellman(self):
        # v >= n*p_max reproduces the unrestricted sequence
        inst = gen_random_instance(12, 9, 9, 40, SeedCtx(8))
        big = inst.n * inst.p_max
        seq, _ = bc_profit_bounded(inst, 40, big, SeedCtx(9), boost=6)
        ref, _ = bellman_profit_dp(inst, 40)
        assert seq.values == ref.values
