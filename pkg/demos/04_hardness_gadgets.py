"""Bounded min-plus verification encoded as knapsack thresholds.

A verification instance (does c lower-bound the min-plus convolution of
a and b everywhere?) maps to a knapsack instance whose optimum crosses a
sharp threshold exactly when the answer is no.  The two gadget variants
sit at opposite parameter extremes, which also makes them spicy solver
fixtures.

Run: python demos/04_hardness_gadgets.py
"""

from tropsack import SeedCtx
from tropsack.bellman import bellman_profit_dp
from tropsack.hardness import (gadget_small_weights,
                               gadget_small_weights_threshold,
                               gen_mpv_instance, verify_naive, write_mpv)
from tropsack.solve import solve

for satisfied in (True, False):
    mpv = gen_mpv_instance(10, SeedCtx(3 if satisfied else 4),
                           satisfied=satisfied)
    print(write_mpv(mpv))
    holds = verify_naive(mpv)
    inst = gadget_small_weights(mpv)
    seq, _ = bellman_profit_dp(inst, inst.capacity)
    opt = int(seq[inst.capacity])
    thr = gadget_small_weights_threshold(mpv.n)
    print(f"verification holds: {holds}")
    print(f"gadget: {inst.n} items, t = {inst.capacity}, "
          f"w_max = {inst.w_max}, p_max = {inst.p_max}")
    print(f"OPT = {opt} vs threshold 112 n^2 = {thr} "
          f"-> {'<=' if opt <= thr else '>'} threshold\n")

# the gadgets stress the solvers at extreme parameter ratios
mpv = gen_mpv_instance(12, SeedCtx(8))
inst = gadget_small_weights(mpv)
rep = solve(inst, algo="t_sqrt_p", seed=SeedCtx(1))
ref, _ = bellman_profit_dp(inst, inst.capacity)
print(f"t*sqrt(p_max) solver on the gadget: {rep.opt} "
      f"(DP says {int(ref[inst.capacity])})")
