"""Discrete-timestep game: income lands after every step, then purchases.

The decision problem ("can M cookies be banked by the end of step T?")
is what the strong-hardness construction targets, so only an exhaustive
decision oracle is provided here, no scalable solver.

Within a step the order is fixed: income is credited first, then that
step's purchases execute in listed order with prices escalating per
copy immediately.  Income from items bought this step starts accruing
from the next step's credit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import InputError
from .model import Item
from .numeric import number_to_json, parse_number


@dataclass(frozen=True)
class DiscreteInstance:
    """All-integer variant: income per step, items, goal M, deadline T."""

    income: int
    items: tuple[Item, ...]
    goal_cookies: int
    deadline: int

    @property
    def k(self) -> int:
        return len(self.items)


# One purchase list per timestep (item indices, bought in order).
Schedule = Sequence[Sequence[int]]


def validate_discrete(dinst: DiscreteInstance) -> None:
    if dinst.income < 0:
        raise InputError("income must be >= 0")
    if dinst.goal_cookies <= 0 or dinst.deadline <= 0:
        raise InputError("goal and deadline must be positive")
    for idx, it in enumerate(dinst.items):
        if it.x <= 0 or it.y <= 0 or it.alpha < 1:
            raise InputError(f"item {idx} violates x>0, y>0, alpha>=1")
        for v in (it.x, it.y):
            if v != int(v):
                raise InputError(f"item {idx}: discrete games need integer x, y")


def simulate_discrete(
    dinst: DiscreteInstance, schedule: Schedule
) -> tuple[int, bool]:
    """Run the schedule; return (cookies at end of step T, feasible).

    An unaffordable purchase marks the schedule infeasible; it and any
    later purchases are skipped while income keeps flowing, so the
    returned count is still well-defined.
    """
    validate_discrete(dinst)
    if len(schedule) > dinst.deadline:
        raise InputError("schedule is longer than the deadline")
    cookies = 0
    rate = dinst.income
    counts = [0] * dinst.k
    feasible = True
    for step in range(dinst.deadline):
        cookies += rate
        if not feasible or step >= len(schedule):
            continue
        for i in schedule[step]:
            if not 0 <= i < dinst.k:
                raise InputError(f"item index {i} out of range")
            price = discrete_price(dinst.items[i], counts[i])
            if price > cookies:
                feasible = False
                break
            cookies -= price
            counts[i] += 1
            rate += int(dinst.items[i].x)
    return cookies, feasible


def discrete_price(item: Item, owned: int) -> int:
    """Escalated price, which must stay integral in the discrete game."""
    price = item.y * item.alpha**owned
    if price != int(price):
        raise InputError(f"non-integral price {price} in a discrete game")
    return int(price)


def decide_discrete(dinst: DiscreteInstance, budget: int = 10_000_000) -> bool:
    """Exact decision: does any schedule bank the goal by the deadline?"""
    from .oracle import brute_force_discrete

    answer, _ = brute_force_discrete(dinst, budget=budget)
    return answer


# --- JSON (mirrors the continuous instance format, plus "deadline") ---


def discrete_from_json(d: dict) -> DiscreteInstance:
    try:
        items = tuple(
            Item(int(it["x"]), int(it["y"]), parse_number(it["alpha"], exact=True))
            for it in d["items"]
        )
        return DiscreteInstance(
            income=int(d["initial_rate"]),
            items=items,
            goal_cookies=int(d["goal"]["value"]),
            deadline=int(d["deadline"]),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"bad discrete instance: {e}") from e


def discrete_to_json(dinst: DiscreteInstance) -> dict:
    return {
        "initial_cookies": 0,
        "initial_rate": dinst.income,
        "items": [
            {"x": int(it.x), "y": int(it.y), "alpha": number_to_json(it.alpha)}
            for it in dinst.items
        ],
        "goal": {"type": "cookies", "value": dinst.goal_cookies},
        "deadline": dinst.deadline,
    }


def schedule_from_json(d: dict) -> list[list[int]]:
    try:
        return [[int(i) for i in step] for step in d["steps"]]
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"bad schedule: {e}") from e


def schedule_to_json(schedule: Schedule) -> dict:
    return {"steps": [list(step) for step in schedule]}
