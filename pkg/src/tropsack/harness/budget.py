"""Time-budget wrapper for Las Vegas routines.

The convolution engine's running time is random (its correctness is not);
bounding the worst case means aborting slow runs and retrying with fresh
randomness.  Routines cooperate by honoring a ``deadline`` argument
(checked between pipeline stages) and raising DeadlineExceeded.
"""

from __future__ import annotations

import math
import time

from ..core import SeedCtx
from ..convolution import DeadlineExceeded


class BudgetExhausted(RuntimeError):
    """Every retry blew its budget; surfaced, never silently wrong."""


def monte_carlo_budget(op, cost_estimate: float, seed: SeedCtx,
                       budget_factor: float = 8.0, n_hint: int = 1024):
    """Run ``op(seed_child, deadline)`` under a deadline of
    budget_factor * cost_estimate seconds, retrying with fresh seeds up to
    ceil(log2(n_hint)) times."""
    retries = max(1, math.ceil(math.log2(max(n_hint, 2))))
    last = None
    for attempt in range(retries):
        child = seed.child(attempt)
        if budget_factor == math.inf:
            return op(child, None)
        deadline = time.monotonic() + budget_factor * cost_estimate
        try:
            return op(child, deadline)
        except DeadlineExceeded as exc:
            last = exc
            continue
    raise BudgetExhausted(
        f"{retries} runs exceeded {budget_factor} x {cost_estimate:.3g}s "
        f"budget") from last
