"""Closed forms and thresholds: one-item solutions, stopping rules,
efficiency scores, two-item structure thresholds and greedy-analysis
constants.

Totals are always computed by exact summation; the familiar logarithmic
estimates of those sums are exposed separately (CLI diagnostics only)
and never used in optimality decisions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import AssumptionViolated, InputError
from .model import CookiesGoal, Instance, Item, RateGoal, current_cost
from .numeric import Number, ceil_number, close, floor_number


def should_buy(rate: Number, price: Number, x: Number, goal_cookies: Number) -> bool:
    """Whether buying (price, x) at ``rate`` beats waiting for the goal.

    Buying is worthwhile iff M/price >= 1 + rate/x; the boundary counts
    as a buy, and every solver shares that convention so optimal
    strategies are deterministic.
    """
    if rate <= 0 or price <= 0 or x <= 0 or goal_cookies <= 0:
        raise InputError("should_buy needs positive rate, price, x and goal")
    return goal_cookies / price >= 1 + rate / x


def stop_rate_threshold(
    priced_items: list[tuple[Number, Number]], goal_cookies: Number
) -> Number:
    """Rate above which no listed (x, current price) is worth buying.

    Returns max_i(M*x_i/y_i - x_i); once the generation rate strictly
    exceeds it, waiting out the goal beats every further purchase.
    """
    if not priced_items:
        raise InputError("need at least one item")
    if any(p <= 0 or x <= 0 for x, p in priced_items):
        raise InputError("prices and gains must be positive")
    return max(goal_cookies * x / p - x for x, p in priced_items)


@dataclass(frozen=True)
class OneItemSolution:
    k_star: int
    total_time: Number
    tie_at_boundary: bool


def one_item_total_time(item: Item, k: int, inst: Instance) -> Number:
    """Exact time for: buy k copies eagerly, then wait out the goal."""
    r = inst.initial_rate
    t = r * 0
    for n in range(k):
        t = t + item.y * item.alpha**n / (r + n * item.x)
    if isinstance(inst.goal, CookiesGoal):
        t = t + inst.goal.value / (r + k * item.x)
    return t


def solve_one_item(inst: Instance) -> OneItemSolution:
    """Optimal purchase count for a single-item game, both goal kinds.

    Cookie goal, fixed cost: the count is the smallest integer exceeding
    M/y - 1 - r/x.  Increasing cost: the first count whose next copy is
    no longer worth buying.  Rate goal: ceil((R - r)/x).  Boundary ties
    resolve to the larger count (buy at exact equality).
    """
    if inst.k != 1:
        raise InputError("solve_one_item needs exactly one item")
    if inst.initial_cookies != 0:
        raise InputError("solve_one_item assumes zero initial cookies")
    item = inst.items[0]
    r = inst.initial_rate
    if isinstance(inst.goal, RateGoal):
        k = max(0, ceil_number((inst.goal.value - r) / item.x))
        return OneItemSolution(k, one_item_total_time(item, k, inst), False)
    if not isinstance(inst.goal, CookiesGoal):
        raise InputError("solve_one_item needs a cookies or rate goal")
    m = inst.goal.value
    if item.alpha == 1:
        edge = m / item.y - 1 - r / item.x
        k = max(0, floor_number(edge) + 1)
    else:
        k = 0
        while should_buy(r + k * item.x, current_cost(item, k), item.x, m):
            k += 1
    t = one_item_total_time(item, k, inst)
    tie = k >= 1 and close(one_item_total_time(item, k - 1, inst), t)
    return OneItemSolution(k, t, tie)


def efficiency_score(price: Number, x: Number, rate: Number) -> Number:
    """price/x + price/rate; the next purchase with the lowest score wins."""
    if price <= 0 or x <= 0 or rate <= 0:
        raise InputError("efficiency_score needs positive arguments")
    return price / x + price / rate


@dataclass(frozen=True)
class TwoItemThresholds:
    """Structure thresholds for two fixed-cost items (item 2 pricier but
    better value per cookie)."""

    swap_rate: Number  # below it buy 1 before 2, above it the reverse
    goal_factor: Number  # the max(2, ...) factor in the no-trailing-1 bound
    goal_threshold: Number  # cookie goals >= this have no trailing 1s
    trailing_ones_bound: int  # rate-goal cap on the final run of item 1


def _standing_assumptions_ok(i1: Item, i2: Item) -> bool:
    return i2.y > i1.y and i2.x / i2.y > i1.x / i1.y


def two_item_thresholds(i1: Item, i2: Item, goal_cookies: Number) -> TwoItemThresholds:
    """Thresholds governing the 1*2* shape of optimal two-item strategies.

    Requires y2 > y1 and x2/y2 > x1/y1 (otherwise item 2 is dominated
    for large goals and the shape analysis does not apply).
    """
    if not _standing_assumptions_ok(i1, i2):
        raise AssumptionViolated(
            "need y2 > y1 and x2/y2 > x1/y1; reorder or drop the dominated item"
        )
    margin = i1.y / i1.x - i2.y / i2.x  # > 0 given the assumptions
    swap = (i2.y - i1.y) / margin
    factor = max(2, (2 / i1.x) * (i1.y + i2.y) / margin)
    bound = ceil_number(i2.x / i1.x) * (
        floor_number(1 / (i2.x / i1.x - i2.y / i1.y)) + 1
    )
    return TwoItemThresholds(swap, factor, (factor + 2) * i1.y, bound)


def greedy_dominance_rate(alpha: Number, x: Number) -> Number:
    """Rate threshold above which the lowest-score item is globally best.

    Solves q**2 + 2q = 1/(alpha - 1) for the positive root and scales by
    ``x``.  Defined only for alpha > 1 (rising prices are what lock the
    locally efficient choice in globally).  Roots are irrational, so the
    result is a float even in exact mode.
    """
    if alpha <= 1:
        raise InputError("threshold undefined for alpha <= 1")
    if x <= 0:
        raise InputError("x must be positive")
    q = -1 + math.sqrt(1 + 1 / float(alpha - 1))
    return q * float(x)


def greedy_dominance_rate_all(items: list[Item]) -> Number:
    """Max of the per-item dominance rates; past it greedy picks are global."""
    vals = [
        greedy_dominance_rate(i.alpha, i.x) for i in items if i.alpha > 1
    ]
    if not vals:
        raise InputError("no item has alpha > 1")
    return max(vals)


def trailing_run_bound(
    x1: Number, x2: Number, alpha1: Number, alpha2: Number
) -> int:
    """Cap on the optimal solution's final same-item run (rising costs).

    ceil(j*log(j*alpha1)/log(alpha2) + 1) with j = ceil(x2/x1).
    """
    if x1 <= 0 or x2 <= 0:
        raise InputError("rate gains must be positive")
    if alpha1 <= 1 or alpha2 <= 1:
        raise InputError("growth factors must exceed 1")
    j = math.ceil(x2 / x1)
    return math.ceil(j * math.log(j * float(alpha1)) / math.log(float(alpha2)) + 1)


def harmonic_estimate(item: Item, k: int, inst: Instance) -> float:
    """(y/x)*ln(k) + M/(r+kx), the familiar log estimate.  Diagnostic only."""
    if k <= 0:
        return 0.0
    est = float(item.y) / float(item.x) * math.log(k)
    if isinstance(inst.goal, CookiesGoal):
        est += float(inst.goal.value) / float(inst.initial_rate + k * item.x)
    return est
