import numpy as np
import pytest

from tropsack import INF, SeedCtx
from tropsack.bellman import bellman_profit_dp, bellman_weight_dp
from tropsack.hardness import (MPVInstance, gadget_small_profits,
                               gadget_small_profits_threshold,
                               gadget_small_weights,
                               gadget_small_weights_threshold,
                               gen_mpv_instance, parse_mpv, verify_naive,
                               write_mpv)


class TestVerifyNaive:
    def test_zero_c_holds(self):
        assert verify_naive(MPVInstance((0, 0), (0, 0), (0, 0, 0)))

    def test_single_violation(self):
        assert not verify_naive(MPVInstance((0, 0), (0, 0), (1, 0, 0)))

    def test_tight_c_holds(self):
        rng = np.random.default_rng(0)
        for trial in range(50):
            n = int(rng.integers(2, 20))
            a = tuple(int(v) for v in rng.integers(0, n + 1, n))
            b = tuple(int(v) for v in rng.integers(0, n + 1, n))
            c = tuple(min(min(a[i] + b[k - i]
                              for i in range(max(0, k - n + 1),
                                             min(n, k + 1))), n)
                      for k in range(2 * n - 1))
            assert verify_naive(MPVInstance(a, b, c))


class TestFormat:
    def test_round_trip(self):
        m = gen_mpv_instance(9, SeedCtx(4))
        assert parse_mpv(write_mpv(m)) == m

    def test_bad_entries_rejected(self):
        with pytest.raises(ValueError):
            MPVInstance((0, 5), (0, 0), (0, 0, 0))  # 5 > n = 2
        with pytest.raises(ValueError):
            MPVInstance((0, 0), (0, 0), (0, 0))  # |c| != 2n-1


class TestMonotonized:
    def test_non_decreasing(self):
        rng = np.random.default_rng(1)
        for trial in range(100):
            n = int(rng.integers(2, 30))
            m = gen_mpv_instance(n, SeedCtx(trial))
            for arr in m.monotonized():
                assert all(x <= y for x, y in zip(arr, arr[1:]))


class TestGadgets:
    def test_item_counts(self):
        m = gen_mpv_instance(5, SeedCtx(2))
        assert gadget_small_weights(m).n == 4 * 5 - 1
        assert gadget_small_profits(m).n == 4 * 5 - 1

    def test_small_weights_frozen(self):
        m = MPVInstance((0, 0), (0, 0), (0, 0, 0))
        inst = gadget_small_weights(m)
        assert (inst.items[0].weight, inst.items[0].profit) == (10, 8)
        assert (inst.items[1].weight, inst.items[1].profit) == (9, 6)
        assert inst.capacity == 70

    def test_small_profits_frozen(self):
        m = MPVInstance((0, 0), (0, 0), (0, 0, 0))
        inst = gadget_small_profits(m)
        assert (inst.items[0].weight, inst.items[0].profit) == (20, 4)
        assert (inst.items[1].weight, inst.items[1].profit) == (22, 5)
        assert inst.capacity == 35 * 4 - 1

    def test_weights_equivalence(self):
        rng = np.random.default_rng(3)
        for trial in range(80):
            n = int(rng.integers(2, 49))
            m = gen_mpv_instance(n, SeedCtx(trial))
            inst = gadget_small_weights(m)
            seq, _ = bellman_profit_dp(inst, inst.capacity)
            opt = int(seq[inst.capacity])
            assert (opt <= gadget_small_weights_threshold(n)) == \
                verify_naive(m), (trial, n)

    def test_profits_equivalence(self):
        rng = np.random.default_rng(4)
        for trial in range(50):
            n = int(rng.integers(2, 33))
            m = gen_mpv_instance(n, SeedCtx(900 + trial))
            inst = gadget_small_profits(m)
            vmax = 130 * n
            wseq, _ = bellman_weight_dp(inst, vmax)
            opt = max((v for v in range(vmax + 1)
                       if wseq[v] != INF and wseq[v] <= inst.capacity),
                      default=0)
            assert (opt < gadget_small_profits_threshold(n)) == \
                verify_naive(m), (trial, n)
