"""Exhaustive reference solvers.

These are deliberately naive: they enumerate purchase orderings one by
one and simulate each in exact arithmetic.  They exist to validate the
real solvers on desk-scale inputs and to decide generated hardness
instances, never to scale.  Budgets are explicit and enumeration order
is lexicographic so witnesses are reproducible; exceeding a budget is
an error, not a silent truncation.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from .discrete import DiscreteInstance, discrete_price, validate_discrete
from .errors import BudgetExceeded, InputError
from .model import CookiesGoal, Instance, RateGoal, current_cost, exact_instance
from .numeric import Number, min_power_reaching

DEFAULT_BUDGET = 10_000_000


@dataclass(frozen=True)
class OracleResult:
    best_strategy: tuple[int, ...]
    best_time: Number
    sequences_explored: int


def default_caps(inst: Instance) -> list[int]:
    """Per-item purchase caps that provably contain an optimal strategy."""
    goal = inst.goal
    caps = []
    if isinstance(goal, RateGoal):
        for it in inst.items:
            caps.append(max(0, math.ceil((goal.value - inst.initial_rate) / it.x)))
        return caps
    if not isinstance(goal, CookiesGoal):
        raise InputError("oracle needs a cookies or rate goal")
    m = goal.value
    # rate cap: no purchase helps (even one subsidised by leftover initial
    # cookies) once the rate tops max_i(M*x_i/y_i), so per-item counts
    # beyond (stop - r)/x + 1 are never part of an optimum
    stop_rate = max(m * it.x / it.y for it in inst.items)
    for it in inst.items:
        by_rate = max(0, math.floor((stop_rate - inst.initial_rate) / it.x) + 1)
        if it.alpha > 1:
            # price cap: a copy priced >= M can never be paid for before
            # the goal crossing ends the game
            caps.append(min(by_rate, min_power_reaching(it.y, it.alpha, m)))
        else:
            caps.append(by_rate)
    return caps


def count_sequences(caps: Sequence[int]) -> int:
    """Number of purchase sequences (all orderings of all sub-multisets)."""
    total = 0

    def rec(i: int, length: int, ways: int) -> None:
        # ways = multinomial coefficient of the counts chosen so far
        nonlocal total
        if i == len(caps):
            total += ways
            return
        c = ways
        n = 0
        rec(i + 1, length, ways)
        while n < caps[i]:
            n += 1
            c = c * (length + n) // n  # extend multinomial by one more copy
            rec(i + 1, length + n, c)

    rec(0, 0, 1)
    return total


def brute_force_continuous(
    inst: Instance,
    per_item_caps: Optional[Sequence[int]] = None,
    budget: int = DEFAULT_BUDGET,
) -> OracleResult:
    """Enumerate every purchase ordering within caps; exact arithmetic.

    The sequence count is computed up front and compared against the
    budget before any work happens.  Within caps the returned time is
    the true optimum; ties go to the lexicographically first sequence.
    """
    inst = exact_instance(inst)
    caps = list(per_item_caps) if per_item_caps is not None else default_caps(inst)
    if len(caps) != inst.k or any(c < 0 for c in caps):
        raise InputError("need one non-negative cap per item")
    grid = math.prod(c + 1 for c in caps)
    if grid > budget:  # cheap lower bound: one sequence per multiset
        raise BudgetExceeded(f">= {grid} sequences exceed budget {budget}")
    total = count_sequences(caps)
    if total > budget:
        raise BudgetExceeded(f"{total} sequences exceed budget {budget}")

    goal = inst.goal
    rate_goal = isinstance(goal, RateGoal)
    if not rate_goal and not isinstance(goal, CookiesGoal):
        raise InputError("oracle needs a cookies or rate goal")
    target = goal.value

    best_time: Number = math.inf
    best_seq: tuple[int, ...] = ()
    explored = 0
    k = inst.k
    items = inst.items
    counts = [0] * k
    seq: list[int] = []

    def completion(clock: Number, cookies: Number, rate: Number) -> Number:
        if rate_goal:
            return clock if rate >= target else math.inf
        if cookies >= target:
            return clock
        if rate <= 0:
            return math.inf
        return clock + (target - cookies) / rate

    def visit(clock: Number, cookies: Number, rate: Number) -> None:
        nonlocal best_time, best_seq, explored
        explored += 1
        value = completion(clock, cookies, rate)
        if value < best_time:
            best_time = value
            best_seq = tuple(seq)
        if rate_goal and rate >= target:
            return  # deeper purchases can only happen later
        for i in range(k):
            if counts[i] >= caps[i]:
                continue
            price = current_cost(items[i], counts[i])
            if cookies >= price:
                nclock, ncookies = clock, cookies - price
            elif rate > 0:
                nclock, ncookies = clock + (price - cookies) / rate, cookies * 0
            else:
                continue  # no income and unaffordable: dead branch
            # crossing mid-wait is already captured by this node's value,
            # which is <= any completion of the extended sequence
            counts[i] += 1
            seq.append(i)
            visit(nclock, ncookies, rate + items[i].x)
            seq.pop()
            counts[i] -= 1

    depth = sum(caps) + 10
    old_limit = sys.getrecursionlimit()
    if depth + 100 > old_limit:
        sys.setrecursionlimit(depth + 200)
    try:
        visit(inst.initial_cookies * 0, inst.initial_cookies, inst.initial_rate)
    finally:
        sys.setrecursionlimit(old_limit)
    return OracleResult(best_seq, best_time, explored)


def best_single_copy_time(inst: Instance) -> OracleResult:
    """Exact optimum when no item can sensibly be bought twice.

    Requires a cookie goal and, for every item, a second copy priced at
    or above the goal (such a copy can never be paid for before the
    goal crossing ends the game, so capping every item at one copy is
    exact, and the state after buying a set is independent of order
    except for elapsed time).  A Bellman sweep over item subsets then
    finds the cheapest ordering, which stays feasible at 2**k states
    where ordering enumeration would not.
    """
    inst = exact_instance(inst)
    goal = inst.goal
    if not isinstance(goal, CookiesGoal):
        raise InputError("single-copy sweep needs a cookies goal")
    m = goal.value
    for idx, it in enumerate(inst.items):
        if it.y * it.alpha < m:
            raise InputError(
                f"item {idx}: second copy costs {it.y * it.alpha} < goal {m}; "
                "single-copy sweep would not be exact"
            )
    k = inst.k
    if k > 24:
        raise BudgetExceeded(f"2^{k} subsets is past the sweep's comfort zone")
    z, r0 = inst.initial_cookies, inst.initial_rate
    xs = [it.x for it in inst.items]
    ys = [it.y for it in inst.items]

    cost = {0: z * 0}
    reach: dict[int, Number] = {0: z * 0}
    parent: dict[int, tuple[int, int]] = {}
    order = sorted(range(1 << k), key=lambda s: s.bit_count())
    for s in order[1:]:
        cost[s] = sum(ys[i] for i in range(k) if s >> i & 1)
    best_time: Number = math.inf
    best_mask = 0
    for s in order:
        t = reach.get(s)
        if t is None:
            continue
        leftover = max(z - cost[s], z * 0)
        rate = r0 + sum(xs[i] for i in range(k) if s >> i & 1)
        if leftover >= m:
            value: Number = t
        elif rate > 0:
            value = t + (m - leftover) / rate
        else:
            value = math.inf
        if value < best_time:
            best_time, best_mask = value, s
        for i in range(k):
            if s >> i & 1:
                continue
            if ys[i] <= leftover:
                nt = t
            elif rate > 0:
                nt = t + (ys[i] - leftover) / rate
            else:
                continue
            ns = s | 1 << i
            if ns not in reach or nt < reach[ns]:
                reach[ns] = nt
                parent[ns] = (s, i)

    strategy: list[int] = []
    mask = best_mask
    while mask:
        mask, i = parent[mask]
        strategy.append(i)
    strategy.reverse()
    return OracleResult(tuple(strategy), best_time, len(reach))


def brute_force_discrete(
    dinst: DiscreteInstance, budget: int = DEFAULT_BUDGET
) -> tuple[bool, Optional[list[list[int]]]]:
    """Exact decision for the discrete game, with a witness schedule.

    Searches step by step over every affordable purchase multiset.  For
    a fixed step and item-count vector only the cookie balance matters,
    and a larger balance dominates, so frontiers keep the best balance
    per count vector.  States expanded are counted against the budget.
    """
    validate_discrete(dinst)
    caps = _discrete_caps(dinst, budget)

    # frontier: counts -> (cookies, parent counts, purchases made this step)
    frontier: dict[tuple[int, ...], tuple[int, tuple[int, ...] | None, list[int]]] = {
        tuple([0] * dinst.k): (0, None, [])
    }
    trail: list[dict] = []
    expanded = 0
    for step in range(dinst.deadline):
        nxt: dict[tuple[int, ...], tuple[int, tuple[int, ...], list[int]]] = {}
        for counts, (cookies, _, _) in frontier.items():
            cash = cookies + dinst.income + sum(
                int(it.x) * n for it, n in zip(dinst.items, counts)
            )
            expanded += 1
            if expanded > budget:
                raise BudgetExceeded(f"discrete search passed {budget} states")

            def spend(i0: int, counts_now: tuple[int, ...], cash_now: int,
                      bought: list[int]) -> None:
                nonlocal expanded
                best = nxt.get(counts_now)
                if best is None or cash_now > best[0]:
                    nxt[counts_now] = (cash_now, counts, list(bought))
                for i in range(i0, dinst.k):
                    if counts_now[i] >= caps[i]:
                        continue
                    price = discrete_price(dinst.items[i], counts_now[i])
                    if price > cash_now:
                        continue
                    expanded += 1
                    if expanded > budget:
                        raise BudgetExceeded(
                            f"discrete search passed {budget} states"
                        )
                    nc = list(counts_now)
                    nc[i] += 1
                    bought.append(i)
                    spend(i, tuple(nc), cash_now - price, bought)
                    bought.pop()

            spend(0, counts, cash, [])
        trail.append(nxt)
        frontier = nxt

    best_counts = max(frontier, key=lambda c: frontier[c][0], default=None)
    if best_counts is None or frontier[best_counts][0] < dinst.goal_cookies:
        return False, None
    # rebuild the witness schedule backwards through the per-step trail
    schedule: list[list[int]] = []
    counts = best_counts
    for step in range(dinst.deadline - 1, -1, -1):
        _, prev, bought = trail[step][counts]
        schedule.append(bought)
        counts = prev
    schedule.reverse()
    return True, schedule


def _discrete_caps(dinst: DiscreteInstance, budget: int) -> list[int]:
    """Affordability caps per item: grow a spendable-cash bound to a fixpoint.

    Starts from zero purchases, bounds total cash by deadline * (income +
    gains of everything capped so far), and re-derives how many copies
    that cash could ever pay for.  Stable for rising costs; instances
    whose caps keep growing (cheap fixed-cost items) exceed the budget
    and are refused rather than silently truncated.
    """
    caps = [0] * dinst.k
    for _ in range(dinst.k * 4 + 8):
        cash_bound = dinst.deadline * (
            dinst.income + sum(int(it.x) * c for it, c in zip(dinst.items, caps))
        )
        new_caps = []
        for it in dinst.items:
            n, spent = 0, 0
            while True:
                price = discrete_price(it, n)
                if spent + price > cash_bound:
                    break
                spent += price
                n += 1
                if n + 1 > budget:
                    raise BudgetExceeded("per-item cap ran away; cap the instance")
            new_caps.append(n)
        if math.prod(c + 1 for c in new_caps) > budget:
            raise BudgetExceeded(
                f"count-vector grid {math.prod(c + 1 for c in new_caps)} "
                f"exceeds {budget}"
            )
        if new_caps == caps:
            return caps
        caps = new_caps
    raise BudgetExceeded("purchase caps did not stabilise; cap the instance")
