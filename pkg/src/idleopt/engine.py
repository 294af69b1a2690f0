"""Continuous-time executor for purchase strategies.

A strategy is just the Buying Phase sequence; the simulator executes
each purchase the instant it becomes affordable (waiting earlier than
necessary can only lose income, so eager buying is baked into the
semantics rather than exposed as timed actions).  Initial cookies are
spent instantly on the strategy prefix as far as they reach; once a
purchase required waiting, the cookie balance is exactly zero after
every later purchase.

For a cookie goal the simulator watches for the goal crossing
continuously, including while saving up, so over-buying strategies
still report the true first crossing time.  An unmet rate goal yields
``math.inf`` (a value, not an error) so harnesses can rank arbitrary
strategies uniformly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import InputError
from .model import (
    CookiesGoal,
    Instance,
    RateGoal,
    Strategy,
    check_strategy,
    current_cost,
    require_valid,
)
from .numeric import Number, number_to_json

UNREACHABLE = math.inf


@dataclass(frozen=True)
class SimReport:
    """Full timeline of one simulated strategy."""

    purchase_times: tuple[tuple[Number, int, Number], ...]  # (clock, item, price)
    buying_phase_end: Number
    total_time: Number  # math.inf when a rate goal is never met
    final_rate: Number
    leftover_cookies_at_each_purchase: tuple[Number, ...]

    @property
    def reachable(self) -> bool:
        return self.total_time != UNREACHABLE

    def to_json(self) -> dict:
        return {
            "purchases": [
                {
                    "time": number_to_json(t),
                    "item": i,
                    "price": number_to_json(p),
                    "leftover": number_to_json(c),
                }
                for (t, i, p), c in zip(
                    self.purchase_times, self.leftover_cookies_at_each_purchase
                )
            ],
            "buying_phase_end": number_to_json(self.buying_phase_end),
            "total_time": number_to_json(self.total_time),
            "reachable": self.reachable,
            "final_rate": number_to_json(self.final_rate),
        }


def _walk(
    seq: Strategy,
    inst: Instance,
    delays: Optional[Sequence[Number]] = None,
):
    """Execute the purchase sequence; yield (clock, item, price, leftover).

    ``delays`` injects extra idle time before each purchase (used by the
    eager-buying dominance tests).  Cookies keep accruing during a delay.
    """
    counts = [0] * inst.k
    cookies = inst.initial_cookies
    rate = inst.initial_rate
    clock = cookies * 0  # zero of the right numeric type
    for pos, i in enumerate(seq):
        if delays is not None and pos < len(delays) and delays[pos] > 0:
            d = delays[pos]
            cookies = cookies + rate * d
            clock = clock + d
        price = current_cost(inst.items[i], counts[i])
        if cookies >= price:
            cookies = cookies - price
        else:
            if rate <= 0:
                yield (UNREACHABLE, i, price, cookies)
                return
            clock = clock + (price - cookies) / rate
            cookies = cookies * 0
        counts[i] += 1
        rate = rate + inst.items[i].x
        yield (clock, i, price, cookies)
    # sentinel carrying the final state
    yield (clock, -1, rate, cookies)


def buy_time(seq: Strategy, inst: Instance) -> Number:
    """Time needed to execute the whole Buying Phase from the start state."""
    check_strategy(seq, inst)
    end = inst.initial_cookies * 0
    for clock, i, _, _ in _walk(seq, inst):
        end = clock
        if clock == UNREACHABLE and i >= 0:
            return UNREACHABLE
    return end


def simulate(
    seq: Strategy,
    inst: Instance,
    delays: Optional[Sequence[Number]] = None,
) -> SimReport:
    """Run ``seq`` on ``inst`` and report the timeline and total time.

    Cookie goal: total time is the first clock time the balance reaches
    the goal, which may fall inside the Buying Phase.  Rate goal: total
    time is the purchase that first lifts the rate to the goal, or
    ``math.inf`` when the sequence never gets there.
    """
    require_valid(inst)
    check_strategy(seq, inst)
    goal = inst.goal

    purchases: list[tuple[Number, int, Number]] = []
    leftovers: list[Number] = []
    crossing: Optional[Number] = None

    prev_clock = inst.initial_cookies * 0
    prev_cookies = inst.initial_cookies
    prev_rate = inst.initial_rate
    final_rate = inst.initial_rate
    end = prev_clock

    if isinstance(goal, CookiesGoal) and prev_cookies >= goal.value:
        crossing = prev_clock
    if isinstance(goal, RateGoal) and prev_rate >= goal.value:
        crossing = prev_clock

    for clock, i, price, cookies in _walk(seq, inst, delays):
        if clock == UNREACHABLE and i >= 0:
            # rate 0 and the next purchase is unaffordable: stuck forever
            return SimReport(
                tuple(purchases),
                UNREACHABLE,
                UNREACHABLE,
                prev_rate,
                tuple(leftovers),
            )
        if i < 0:
            end, final_rate = clock, price  # sentinel: price slot holds rate
            break
        if (
            isinstance(goal, CookiesGoal)
            and crossing is None
            and clock > prev_clock
        ):
            # balance climbed from prev_cookies toward this purchase price;
            # it crosses the goal iff the goal fits under the peak
            peak = prev_cookies + prev_rate * (clock - prev_clock)
            if peak >= goal.value:
                crossing = prev_clock + (goal.value - prev_cookies) / prev_rate
        purchases.append((clock, i, price))
        leftovers.append(cookies)
        prev_clock, prev_cookies = clock, cookies
        prev_rate = prev_rate + inst.items[i].x
        if (
            isinstance(goal, RateGoal)
            and crossing is None
            and prev_rate >= goal.value
        ):
            crossing = clock

    if isinstance(goal, CookiesGoal):
        if crossing is None:
            if final_rate <= 0:
                total: Number = UNREACHABLE
            else:
                total = end + (goal.value - prev_cookies) / final_rate
        else:
            total = crossing
    elif isinstance(goal, RateGoal):
        total = crossing if crossing is not None else UNREACHABLE
    else:
        raise InputError("simulate needs a cookies or rate goal")

    return SimReport(tuple(purchases), end, total, final_rate, tuple(leftovers))


def buy_time_bounds(
    seq: Strategy, rate: Number, inst: Instance
) -> tuple[Number, Number]:
    """Sandwich bounds for the Buying Phase time starting at ``rate``.

    With P the sum of prices paid and X the sum of rate gains:
    P/(rate+X) < buy time <= P/rate.  Prices are evaluated along the
    sequence (each copy at its own escalated cost), from a zero-cookie
    start.  Empty sequences have degenerate bounds and are rejected.
    """
    if not seq:
        raise InputError("bounds are undefined for an empty sequence")
    check_strategy(seq, inst)
    if rate <= 0:
        raise InputError("rate must be positive")
    counts = [0] * inst.k
    total_price = rate * 0
    total_gain = rate * 0
    for i in seq:
        total_price = total_price + current_cost(inst.items[i], counts[i])
        total_gain = total_gain + inst.items[i].x
        counts[i] += 1
    return total_price / (rate + total_gain), total_price / rate
