"""Reduction from arbitrary instances to balanced ones.

Sort items by profit-to-weight ratio and take the maximum prefix fitting
the capacity; relative to the ratio rho of its last item, items split
into good (> 2*rho), bad (< rho/2) and medium.  Some optimal solution
differs from the prefix only a little on good and bad items (bounded
exchange argument), so it suffices to solve the medium instance for a
short range of consecutive capacities and to know two short curves: the
best bad-item profits up to ~10*w_max of weight, and the best kept-good
profits for kept weights within ~10*w_max of w(G).  The three parts are
recombined with two monotone max-plus convolutions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Tuple

import numpy as np

from .core import (INF, KnapsackInstance, MonotoneSeq, NEG_INF,
                   NON_DECREASING, SeedCtx, Solution, restrict)
from .bellman import greedy_order
from .bounded import bc_profit_bounded, merge_maxplus
from .trace import EmptySetNode, reconstruct_items

# Exchange-argument extents (10) and estimate half-widths (11) plus one
# extra max-parameter of padding to absorb dummy-item boundary effects.
CURVE_EXTENT = 11
RANGE_HALF_WIDTH = 12


@dataclass(frozen=True)
class RatioPartition:
    """Maximum prefix solution and the good/medium/bad ratio classes."""

    order: tuple          # indices by non-increasing ratio
    prefix: tuple         # the maximal fitting prefix, in order
    rho: Optional[Fraction]
    good: tuple
    medium: tuple
    bad: tuple


def max_prefix_partition(instance: KnapsackInstance) -> RatioPartition:
    if instance.n == 0:
        return RatioPartition((), (), None, (), (), ())
    order = tuple(greedy_order(instance))
    total = 0
    prefix = []
    for i in order:
        it = instance.items[i]
        if total + it.weight <= instance.capacity:
            total += it.weight
            prefix.append(i)
        else:
            break
    assert prefix, "normalized instances always fit their lightest item"
    last = prefix[-1]
    rho = Fraction(instance.items[last].profit,
                   max(instance.items[last].weight, 1))
    good, medium, bad = [], [], []
    for i in range(instance.n):
        it = instance.items[i]
        if it.weight == 0:
            ratio = None  # infinite-ratio dummies count as good
        else:
            ratio = Fraction(it.profit, it.weight)
        if ratio is None or ratio > 2 * rho:
            good.append(i)
        elif ratio < rho / 2:
            bad.append(i)
        else:
            medium.append(i)
    return RatioPartition(order, tuple(prefix), rho, tuple(good),
                          tuple(medium), tuple(bad))


@dataclass
class BalancedSubproblem:
    partition: RatioPartition
    medium_ids: tuple
    capacity_range: tuple     # medium capacities to solve, inclusive
    profit_range: tuple       # medium profits to cover, inclusive
    t_query: int              # w(P & M): the medium query capacity
    good_curve: tuple         # (seq, trace): kept-good profit by kept weight
    good_window: tuple
    bad_curve: tuple          # (seq, trace): bad profit by weight budget
    meta: dict = field(default_factory=dict)


def bad_curve(instance: KnapsackInstance, bad_ids, seed: SeedCtx,
              boost: int = 1):
    """Profit curve of the bad items on [0, 11*w_max; 0, 11*p_max]."""
    hi_w = CURVE_EXTENT * instance.w_max
    hi_p = CURVE_EXTENT * instance.p_max
    if not bad_ids:
        seq = MonotoneSeq([0] * (hi_w + 1), 0, NON_DECREASING, NEG_INF,
                          validate=False)
        return seq, EmptySetNode()
    sub = instance.subset(bad_ids)
    return bc_profit_bounded(sub, hi_w, hi_p, seed, boost=boost,
                             ids=np.asarray(bad_ids))


def kept_good_curve(instance: KnapsackInstance, good_ids, seed: SeedCtx,
                    boost: int = 1):
    """Best kept-good profit by kept weight budget, windowed to kept
    weights within ~11*w_max below w(G).  Returns ((seq, trace), window).
    """
    if not good_ids:
        seq = MonotoneSeq([0], 0, NON_DECREASING, NEG_INF, validate=False)
        return (seq, EmptySetNode()), (0, 0)
    sub = instance.subset(good_ids)
    w_g = sub.total_weight()
    p_g = sub.total_profit()
    lo = max(0, w_g - CURVE_EXTENT * instance.w_max)
    seq, tr = bc_profit_bounded(sub, w_g, p_g, seed, boost=boost,
                                ids=np.asarray(good_ids))
    return (restrict(seq, (lo, w_g), (0, p_g)), tr), (lo, w_g)


def good_complement_curve(instance: KnapsackInstance, good_ids,
                          seed: SeedCtx, boost: int = 1) -> MonotoneSeq:
    """L[t''] = least profit of a good subset with total weight >= t'',
    for t'' in [0, ~11*w_max]; +inf where t'' exceeds w(G).

    Computed by complementation: L[t''] = p(G) - P_G[w(G) - t''], reusing
    the bounded profit solver on G unchanged.
    """
    (seq, _), (lo, hi) = kept_good_curve(instance, good_ids, seed, boost)
    if not good_ids:
        total_profit = 0
    else:
        total_profit = sum(instance.items[i].profit for i in good_ids)
    extent = CURVE_EXTENT * max(instance.w_max, 1)
    vals = []
    for t2 in range(0, extent + 1):
        g = hi - t2
        v = seq[g] if g >= 0 else NEG_INF
        vals.append(INF if v == NEG_INF else total_profit - v)
    return MonotoneSeq(vals, 0, NON_DECREASING, INF, validate=False)


def balance_reduce(instance: KnapsackInstance, seed: SeedCtx,
                   boost: Optional[int] = None) -> BalancedSubproblem:
    """Build the medium subproblem and the good/bad recombination curves.

    The medium instance keeps a subset of the items, so all its
    parameters are no greater than the original's; its ratios differ by
    at most a factor of 4.
    """
    part = max_prefix_partition(instance)
    if boost is None:
        boost = math.ceil(math.log2(max(instance.n, 2))) + 3
    prefix_set = frozenset(part.prefix)
    med_in_prefix = [i for i in part.medium if i in prefix_set]
    t_query = sum(instance.items[i].weight for i in med_in_prefix)
    p_query = sum(instance.items[i].profit for i in med_in_prefix)
    half_w = RANGE_HALF_WIDTH * instance.w_max
    half_p = RANGE_HALF_WIDTH * instance.p_max
    cap_range = (max(0, t_query - half_w),
                 min(instance.capacity, t_query + half_w))
    profit_range = (max(0, p_query - half_p), p_query + half_p)
    good, gwin = kept_good_curve(instance, part.good, seed.child(1),
                                 boost=boost)
    bad = bad_curve(instance, part.bad, seed.child(2), boost=boost)
    return BalancedSubproblem(part, part.medium, cap_range, profit_range,
                              t_query, good, gwin, bad)


def combine_balanced(medium_curve, sub: BalancedSubproblem,
                     instance: KnapsackInstance, seed: SeedCtx
                     ) -> Tuple[int, Solution]:
    """Fold the medium window with the bad and kept-good curves: two
    monotone max-plus convolutions, then read the best total at the
    capacity.  Exact whenever the medium window entries are exact."""
    med_seq, med_tr = medium_curve
    good_seq, good_tr = sub.good_curve
    bad_seq, bad_tr = sub.bad_curve
    step1 = merge_maxplus((med_seq, med_tr), (bad_seq, bad_tr),
                          seed.child(1))
    step2 = merge_maxplus(step1, (good_seq, good_tr), seed.child(2))
    total_seq, total_tr = step2
    if total_seq.is_empty() or total_seq.start > instance.capacity:
        return 0, Solution.from_indices(instance, [])
    k = min(instance.capacity, total_seq.stop - 1)
    best, best_k = None, None
    # the merged curve need not be monotone at window seams; scan the
    # (short) result for the best finite entry within capacity
    for j in range(total_seq.start, k + 1):
        v = total_seq[j]
        if v != NEG_INF and v != INF and (best is None or v > best):
            best, best_k = v, j
    if best is None:
        return 0, Solution.from_indices(instance, [])
    ids = [i for i in reconstruct_items(total_tr, best_k, best)
           if not instance.items[i].internal]
    return int(best), Solution.from_indices(instance, ids)
