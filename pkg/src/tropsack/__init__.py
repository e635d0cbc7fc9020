"""tropsack: pseudopolynomial knapsack solvers on a bounded-monotone
tropical convolution engine.

The library computes exact knapsack optima (and profit/weight sequence
windows with witness reconstruction) via randomized divide and conquer:
running times scale with t*sqrt(p_max), OPT*sqrt(w_max), or the
cube-root geometric means, instead of the classic n*t.  The engine
underneath is an exact min-plus/max-plus convolution for monotone
sequences with bounded entries.
"""

from .core import (INF, NEG_INF, Item, KnapsackInstance, MonotoneSeq,
                   NON_DECREASING, NON_INCREASING, UNKNOWN, SeedCtx,
                   Solution, empty_seq, negate_shift, normalize,
                   prefix_maxima, restrict, reverse_index)
from .bellman import bellman_profit_dp, bellman_weight_dp, greedy_upper_bound
from .bounded import bc_profit_bounded, bc_weight_bounded
from .windowed import banded_profit_window, banded_weight_window
from .balanced import (SolverResult, reconstruct_solution,
                       solve_balanced_cuberoot, solve_balanced_cuberoot_sym,
                       solve_balanced_optsqrtw, solve_balanced_tsqrtp)
from .balancing import (balance_reduce, bad_curve, combine_balanced,
                        good_complement_curve, max_prefix_partition)
from .hardness import (MPVInstance, gadget_small_profits,
                       gadget_small_weights, verify_naive)
from .solve import ALGORITHMS, SolveReport, SolverFailure, solve

__version__ = "0.1.0"

__all__ = [
    "INF", "NEG_INF", "Item", "KnapsackInstance", "MonotoneSeq",
    "NON_DECREASING", "NON_INCREASING", "UNKNOWN", "SeedCtx", "Solution",
    "empty_seq", "negate_shift", "normalize", "prefix_maxima", "restrict",
    "reverse_index", "bellman_profit_dp", "bellman_weight_dp",
    "greedy_upper_bound", "bc_profit_bounded", "bc_weight_bounded",
    "banded_profit_window", "banded_weight_window", "SolverResult",
    "reconstruct_solution", "solve_balanced_cuberoot",
    "solve_balanced_cuberoot_sym", "solve_balanced_optsqrtw",
    "solve_balanced_tsqrtp", "balance_reduce", "bad_curve",
    "combine_balanced", "good_complement_curve", "max_prefix_partition",
    "MPVInstance", "gadget_small_profits", "gadget_small_weights",
    "verify_naive", "ALGORITHMS", "SolveReport", "SolverFailure", "solve",
]
