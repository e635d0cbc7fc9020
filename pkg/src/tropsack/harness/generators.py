"""Seeded instance generators."""

from __future__ import annotations

from ..core import Item, KnapsackInstance, SeedCtx


def gen_random_instance(n: int, w_max: int, p_max: int, t: int,
                        seed: SeedCtx) -> KnapsackInstance:
    """Weights uniform in [1, w_max], profits uniform in [1, p_max]."""
    if n < 0 or w_max < 1 or p_max < 1 or t < 0:
        raise ValueError("bounds must be >= 1 (and n, t >= 0)")
    rng = seed.generator()
    ws = rng.integers(1, w_max + 1, n)
    ps = rng.integers(1, p_max + 1, n)
    return KnapsackInstance([Item(int(w), int(p)) for w, p in zip(ws, ps)], t)


def gen_balanced_instance(n: int, w_max: int, p_max: int,
                          seed: SeedCtx) -> KnapsackInstance:
    """Profits track a common profit-to-weight ratio within a factor of 4,
    capacity is half the total weight; the result satisfies the
    balancedness check (t/w_max) / (OPT~/p_max) in [1/8, 8]."""
    if n < 1 or w_max < 1 or p_max < 1:
        raise ValueError("need n, w_max, p_max >= 1")
    inst = None
    for attempt in range(64):
        rng = seed.child(attempt).generator()
        ws = rng.integers(1, w_max + 1, n)
        # per-item ratio factor in [1/2, 2] keeps the spread within 4
        factors = rng.uniform(0.5, 2.0, n)
        items = []
        for w, f in zip(ws, factors):
            profit = int(round(f * float(p_max) * float(w) / float(w_max)))
            items.append(Item(int(w), max(1, min(p_max, profit))))
        t = (int(ws.sum()) + 1) // 2
        inst = KnapsackInstance(items, t)
        if _balance_ratio_ok(inst):
            return inst
    # tiny n cannot always produce a non-trivial balanced instance;
    # degenerate outputs are accepted
    return inst


def _balance_ratio_ok(inst: KnapsackInstance) -> bool:
    from ..bellman import greedy_upper_bound
    from ..core import normalize

    res = normalize(inst)
    if res.is_trivial:
        return False
    sub = res.instance
    opt_bound = greedy_upper_bound(sub)
    lhs = sub.capacity / sub.w_max
    rhs = opt_bound / sub.p_max
    return 1 / 8 <= lhs / rhs <= 8
