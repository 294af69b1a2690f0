"""Core domain types: items, goals, instances, strategies, game states.

All types are immutable after construction and safe to share across
threads.  Item indices are 0-based everywhere in code and file formats;
only human-facing CLI output renders 1-based labels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

from .errors import InputError
from .numeric import Number, number_to_json, parse_number


@dataclass(frozen=True)
class Item:
    """A purchasable generator.

    ``x``      rate gain (cookies/second), > 0
    ``y``      base cost (cookies), > 0
    ``alpha``  cost growth per copy, >= 1; the n-th copy costs y*alpha**(n-1).
               alpha == 1 is the fixed-cost case, not a separate subtype.
    """

    x: Number
    y: Number
    alpha: Number


@dataclass(frozen=True)
class CookiesGoal:
    """Reach ``value`` cookies as fast as possible."""

    value: Number
    kind: str = field(default="cookies", init=False, repr=False)


@dataclass(frozen=True)
class RateGoal:
    """Reach generation rate ``value`` as fast as possible."""

    value: Number
    kind: str = field(default="rate", init=False, repr=False)


@dataclass(frozen=True)
class TimeBudgetGoal:
    """Maximize cookies or rate within ``value`` seconds."""

    value: Number
    maximize: str = "cookies"  # "cookies" | "rate"
    kind: str = field(default="time_budget", init=False, repr=False)


Goal = Union[CookiesGoal, RateGoal, TimeBudgetGoal]


@dataclass(frozen=True)
class Instance:
    """A full problem: initial cookies ``z``, initial rate ``r``, items, goal.

    The baseline game is z=0, r=1.  r=0 is tolerated only together with
    z>0 (you must be able to buy something at t=0 or nothing ever happens);
    the initial-cookies hardness construction relies on that exemption.
    """

    initial_cookies: Number
    initial_rate: Number
    items: tuple[Item, ...]
    goal: Goal

    @property
    def k(self) -> int:
        return len(self.items)


# A strategy is the ordered Buying Phase: item indices, 0-based.  The
# Waiting Phase is implicit after the last purchase.
Strategy = Sequence[int]


@dataclass(frozen=True)
class GameState:
    """Snapshot of a running game; rate is always recomputable from counts."""

    counts: tuple[int, ...]
    cookies: Number
    rate: Number
    clock: Number

    def recomputed_rate(self, inst: Instance) -> Number:
        return inst.initial_rate + sum(
            n * it.x for n, it in zip(self.counts, inst.items)
        )


@dataclass(frozen=True)
class Violation:
    """One invariant violation, with a machine-readable code."""

    code: str
    detail: str
    item_index: int | None = None


def current_cost(item: Item, owned: int) -> Number:
    """Price of the next copy when ``owned`` copies are already held."""
    if owned < 0:
        raise InputError("owned count must be >= 0")
    price = item.y * item.alpha**owned
    if isinstance(price, float) and not math.isfinite(price):
        raise OverflowError(
            f"price y*alpha^{owned} is not finite in float mode; use exact mode"
        )
    return price


def _bad(value: Number) -> bool:
    return isinstance(value, float) and not math.isfinite(value)


def validate_instance(inst: Instance) -> list[Violation]:
    """Collect every invariant violation; an empty list means valid.

    Validation never raises: it is the tool that *reports* broken input.
    """
    out: list[Violation] = []
    z, r = inst.initial_cookies, inst.initial_rate
    if _bad(z) or z < 0:
        out.append(Violation("NegativeInitialCookies", f"z={z} must be >= 0"))
    if _bad(r) or r < 0 or (r == 0 and not z > 0):
        out.append(
            Violation(
                "NonPositiveInitialRate",
                f"r={r} must be > 0 (r=0 is allowed only when z>0)",
            )
        )
    if inst.k < 1:
        out.append(Violation("NoItems", "instance needs at least one item"))
    for i, it in enumerate(inst.items):
        if _bad(it.x) or it.x <= 0:
            out.append(Violation("NonPositiveRateGain", f"x={it.x}", i))
        if _bad(it.y) or it.y <= 0:
            out.append(Violation("NonPositiveCost", f"y={it.y}", i))
        if _bad(it.alpha) or it.alpha < 1:
            out.append(Violation("GrowthBelowOne", f"alpha={it.alpha}", i))
    goal = inst.goal
    if isinstance(goal, CookiesGoal):
        if _bad(goal.value) or goal.value <= 0:
            out.append(Violation("NonPositiveCookieGoal", f"M={goal.value}"))
    elif isinstance(goal, RateGoal):
        if _bad(goal.value) or goal.value <= r:
            out.append(
                Violation("RateGoalNotAboveInitial", f"R={goal.value} <= r={r}")
            )
    elif isinstance(goal, TimeBudgetGoal):
        if _bad(goal.value) or goal.value <= 0:
            out.append(Violation("NonPositiveTimeBudget", f"T={goal.value}"))
        if goal.maximize not in ("cookies", "rate"):
            out.append(Violation("UnknownMaximize", f"maximize={goal.maximize}"))
    else:  # pragma: no cover - dataclass union is closed
        out.append(Violation("UnknownGoal", repr(goal)))
    return out


def require_valid(inst: Instance) -> None:
    violations = validate_instance(inst)
    if violations:
        raise InputError(
            "invalid instance: " + "; ".join(f"{v.code}({v.detail})" for v in violations)
        )


# ---------------------------------------------------------------------------
# JSON wire format
#
# Instance: {"initial_cookies": N, "initial_rate": N,
#            "items": [{"x": N, "y": N, "alpha": N}, ...],
#            "goal": {"type": "cookies"|"rate"|"time_budget",
#                     "value": N, "maximize": "cookies"|"rate"?}}
# where N is a JSON number (float mode) or a "p/q" string (exact mode).
# Strategy: {"purchases": [0, 0, 1, ...]}


def goal_from_json(d: dict, exact: bool) -> Goal:
    try:
        kind = d["type"]
        value = parse_number(d["value"], exact)
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"bad goal: {e}") from e
    if kind == "cookies":
        return CookiesGoal(value)
    if kind == "rate":
        return RateGoal(value)
    if kind == "time_budget":
        return TimeBudgetGoal(value, d.get("maximize", "cookies"))
    raise InputError(f"unknown goal type {kind!r}")


def goal_to_json(goal: Goal) -> dict:
    d = {"type": goal.kind, "value": number_to_json(goal.value)}
    if isinstance(goal, TimeBudgetGoal):
        d["maximize"] = goal.maximize
    return d


def instance_from_json(d: dict, exact: bool = False) -> Instance:
    try:
        items = tuple(
            Item(
                parse_number(it["x"], exact),
                parse_number(it["y"], exact),
                parse_number(it.get("alpha", 1), exact),
            )
            for it in d["items"]
        )
        return Instance(
            initial_cookies=parse_number(d.get("initial_cookies", 0), exact),
            initial_rate=parse_number(d.get("initial_rate", 1), exact),
            items=items,
            goal=goal_from_json(d["goal"], exact),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"bad instance: {e}") from e


def instance_to_json(inst: Instance) -> dict:
    return {
        "initial_cookies": number_to_json(inst.initial_cookies),
        "initial_rate": number_to_json(inst.initial_rate),
        "items": [
            {
                "x": number_to_json(it.x),
                "y": number_to_json(it.y),
                "alpha": number_to_json(it.alpha),
            }
            for it in inst.items
        ],
        "goal": goal_to_json(inst.goal),
    }


def strategy_from_json(d: dict) -> tuple[int, ...]:
    try:
        purchases = tuple(int(i) for i in d["purchases"])
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"bad strategy: {e}") from e
    if any(i < 0 for i in purchases):
        raise InputError("strategy indices must be >= 0")
    return purchases


def strategy_to_json(purchases: Strategy) -> dict:
    return {"purchases": list(purchases)}


def check_strategy(purchases: Strategy, inst: Instance) -> None:
    for i in purchases:
        if not 0 <= i < inst.k:
            raise InputError(f"strategy index {i} out of range [0, {inst.k})")


def exact_instance(inst: Instance) -> Instance:
    """Re-express every field as an exact rational (floats via str())."""

    def conv(v: Number) -> Number:
        if isinstance(v, Fraction):
            return v
        if isinstance(v, int):
            return Fraction(v)
        return Fraction(str(v))

    goal = inst.goal
    if isinstance(goal, TimeBudgetGoal):
        new_goal: Goal = TimeBudgetGoal(conv(goal.value), goal.maximize)
    elif isinstance(goal, RateGoal):
        new_goal = RateGoal(conv(goal.value))
    else:
        new_goal = CookiesGoal(conv(goal.value))
    return Instance(
        conv(inst.initial_cookies),
        conv(inst.initial_rate),
        tuple(Item(conv(i.x), conv(i.y), conv(i.alpha)) for i in inst.items),
        new_goal,
    )
