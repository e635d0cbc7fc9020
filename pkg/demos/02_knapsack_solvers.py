"""The four randomized knapsack solvers on one balanced instance.

Each solver returns a window of the profit (or weight) sequence around
the optimum plus a provenance trace; the demo checks the windows against
the classic dynamic program and rebuilds an optimal item subset.

Run: python demos/02_knapsack_solvers.py
"""

from tropsack import SeedCtx
from tropsack.balanced import (reconstruct_solution, solve_balanced_cuberoot,
                               solve_balanced_cuberoot_sym,
                               solve_balanced_optsqrtw,
                               solve_balanced_tsqrtp)
from tropsack.bellman import bellman_profit_dp
from tropsack.core import normalize, restrict
from tropsack.harness.generators import gen_balanced_instance

inst = normalize(gen_balanced_instance(48, 24, 30, SeedCtx(3))).instance
print(inst)

ref, _ = bellman_profit_dp(inst, inst.capacity)
print("classic DP optimum:", ref[inst.capacity])

solvers = [("t * sqrt(p_max)    ", solve_balanced_tsqrtp),
           ("cube-root profit   ", solve_balanced_cuberoot),
           ("OPT * sqrt(w_max)  ", solve_balanced_optsqrtw),
           ("cube-root weight   ", solve_balanced_cuberoot_sym)]

for label, solver in solvers:
    res = solver(inst, SeedCtx(11))
    opt, idx = res.opt_at(inst.capacity)
    sol = reconstruct_solution(inst, res, idx)
    print(f"{label}: opt={opt}  kind={res.kind}  "
          f"window={res.seq.start}..{res.seq.stop - 1}  "
          f"items={len(sol.indices)}  "
          f"(weight {sol.total_weight}, profit {sol.total_profit})")

# the reported window is the exact restriction of the DP sequence
res = solve_balanced_tsqrtp(inst, SeedCtx(11))
full, _ = bellman_profit_dp(inst, res.t_window[1])
want = restrict(full, res.t_window, res.p_window)
print("\nprofit window equals the DP restriction:",
      res.seq.values == want.values)
print("window slice:", res.seq.values[:10], "...")
