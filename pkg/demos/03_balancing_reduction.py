"""Reducing an arbitrary instance to a balanced one.

The maximum prefix solution splits items into good, medium (ratios
within a factor 4) and bad; the optimum decomposes into most of the good
items, a medium part solved for a short capacity range, and a small bad
part.  Two short tropical convolutions put the pieces back together.

Run: python demos/03_balancing_reduction.py
"""

from fractions import Fraction

from tropsack import SeedCtx
from tropsack.balancing import balance_reduce, combine_balanced, \
    max_prefix_partition
from tropsack.bellman import bellman_profit_dp
from tropsack.core import normalize
from tropsack.harness.generators import gen_random_instance
from tropsack.solve import _medium_bellman_window

inst = normalize(gen_random_instance(40, 20, 60, 220, SeedCtx(5))).instance
print(inst)

part = max_prefix_partition(inst)
print(f"prefix ratio rho = {part.rho} "
      f"({float(part.rho):.2f})")
print(f"good items  : {len(part.good)} (ratio > 2 rho)")
print(f"medium items: {len(part.medium)} (within [rho/2, 2 rho])")
print(f"bad items   : {len(part.bad)} (ratio < rho/2)")

sub = balance_reduce(inst, SeedCtx(9))
print(f"\nmedium capacities to solve: {sub.capacity_range} "
      f"(around w(P & M) = {sub.t_query})")

med = inst.subset(sub.medium_ids)
if med.n:
    ratios = [Fraction(it.profit, it.weight) for it in med.items]
    print(f"medium ratio spread: {float(max(ratios) / min(ratios)):.2f} "
          f"(always <= 4)")

window = _medium_bellman_window(inst, sub, {})
opt, sol = combine_balanced(window, sub, inst, SeedCtx(10))
ref, _ = bellman_profit_dp(inst, inst.capacity)
print(f"\nrecombined optimum: {opt}")
print(f"classic DP optimum: {ref[inst.capacity]}")
print(f"witness subset: weight {sol.total_weight} <= {inst.capacity}, "
      f"profit {sol.total_profit}")
