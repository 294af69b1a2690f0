"""Hardness-construction generators and their desk-scale verifiers.

Each generator turns a small combinatorial instance (an equal-split
question over a multiset, or its triple/grouped variant) into a game
instance whose decision at a threshold time answers the combinatorial
question.  Certificates carry both sides plus the threshold so the
"if and only if" can be re-checked mechanically with exact rationals.

The constructions need "so large it is never bought twice" growth
factors; instead of assuming one, each generator computes the least
integer factor with a checkable guarantee (second copy priced past the
goal, or past anything the clock allows), and the verifier re-asserts
that guarantee per instance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .discrete import DiscreteInstance, decide_discrete, discrete_from_json, discrete_to_json
from .errors import BudgetExceeded, InputError, NotTripletCount, OddSum
from .model import (
    CookiesGoal,
    Instance,
    Item,
    RateGoal,
    instance_from_json,
    instance_to_json,
)
from .numeric import Number, ceil_number, number_to_json, parse_number
from .oracle import DEFAULT_BUDGET, best_single_copy_time, brute_force_continuous

KIND_RATE = "partition-to-rate"
KIND_INITIAL = "partition-to-initial-cookies"
KIND_DISCRETE = "3partition-to-discrete"


@dataclass(frozen=True)
class PartitionInstance:
    """A multiset of positive integers for equal-split questions."""

    values: tuple[int, ...]

    def __post_init__(self):
        if not self.values or any(v < 1 or v != int(v) for v in self.values):
            raise InputError("partition values must be positive integers")

    @property
    def total(self) -> int:
        return sum(self.values)


@dataclass(frozen=True)
class ReductionCertificate:
    kind: str
    source: tuple[int, ...]
    game: Union[Instance, DiscreteInstance]
    threshold_time: Number
    growth_factors: tuple[int, ...]  # the concrete per-item "never twice" alphas
    groups: int = 0  # m, discrete kind only
    scale: int = 1  # source multiplier applied for integrality, discrete kind only


# ---------------------------------------------------------------------------
# Combinatorial side (exhaustive)


def has_half_subset(values: tuple[int, ...]) -> bool:
    """Is there a subset summing to half the (even) total?"""
    total = sum(values)
    if total % 2:
        return False
    half = total // 2
    sums = {0}
    for v in values:
        sums |= {s + v for s in sums if s + v <= half}
    return half in sums


def has_equal_groups(values: tuple[int, ...], m: int) -> bool:
    """Can the multiset split into m groups (any sizes) of equal sum?"""
    total = sum(values)
    if m < 1 or total % m:
        return False
    target = total // m
    items = sorted(values, reverse=True)
    if items and items[0] > target:
        return False
    loads = [0] * m

    def place(i: int) -> bool:
        if i == len(items):
            return True
        seen = set()
        for g in range(m):
            if loads[g] + items[i] > target or loads[g] in seen:
                continue
            seen.add(loads[g])
            loads[g] += items[i]
            if place(i + 1):
                loads[g] -= items[i]
                return True
            loads[g] -= items[i]
        return False

    return place(0)


def has_triple_partition(values: tuple[int, ...], m: int) -> bool:
    """Can the multiset split into m triples of equal sum?

    This is the textbook question; the discrete-game construction
    certifies the looser ``has_equal_groups`` condition, and the two
    coincide exactly when every value lies strictly between a quarter
    and half of the per-group target (the standard instance shape).
    """
    if len(values) != 3 * m:
        return False
    total = sum(values)
    if total % m:
        return False
    target = total // m
    items = sorted(values, reverse=True)
    loads = [0] * m
    sizes = [0] * m

    def place(i: int) -> bool:
        if i == len(items):
            return True
        seen = set()
        for g in range(m):
            key = (loads[g], sizes[g])
            if sizes[g] == 3 or loads[g] + items[i] > target or key in seen:
                continue
            seen.add(key)
            loads[g] += items[i]
            sizes[g] += 1
            if place(i + 1):
                loads[g] -= items[i]
                sizes[g] -= 1
                return True
            loads[g] -= items[i]
            sizes[g] -= 1
        return False

    return place(0)


def standard_shape(values: tuple[int, ...], m: int) -> bool:
    """True when every value sits strictly inside (target/4, target/2)."""
    total = sum(values)
    if m < 1 or total % m:
        return False
    target = Fraction(total, m)
    return all(target / 4 < v < target / 2 for v in values)


# ---------------------------------------------------------------------------
# Generators


def reduce_partition_to_rate(p: PartitionInstance) -> ReductionCertificate:
    """Equal-split question as a rate-goal race.

    With W = B**2 + B + 1, items (a_i/W, a_i, L_i), goal rate 1 + B/W:
    a split exists iff some strategy reaches the goal within B seconds.
    L_i is the least integer pricing a second copy past what the clock
    allows at the highest relevant rate.
    """
    if p.total % 2:
        raise OddSum(f"sum {p.total} is odd; no equal split exists to ask about")
    b = p.total // 2
    w = b * b + b + 1
    deadline = b
    rate_ceiling = 1 + Fraction(2 * b, w)  # rate if everything is bought once
    ls = tuple(
        ceil_number(deadline * rate_ceiling / a) + 1 for a in p.values
    )
    items = tuple(
        Item(Fraction(a, w), Fraction(a), Fraction(big))
        for a, big in zip(p.values, ls)
    )
    game = Instance(
        Fraction(0), Fraction(1), items, RateGoal(1 + Fraction(b, w))
    )
    return ReductionCertificate(KIND_RATE, p.values, game, Fraction(deadline), ls)


def reduce_partition_to_initial_cookies(p: PartitionInstance) -> ReductionCertificate:
    """Equal-split question as an initial-cookies race.

    k originals (a_i + A, a_i + A, L), k fillers (A, A, L), a bank of
    z = kA + B cookies, no income, goal M = z + 1: a split exists iff
    the goal falls within M/(kA + B) seconds.  A = 1000B keeps fillers
    dwarfing the values; L prices second copies past the goal.
    """
    if p.total % 2:
        raise OddSum(f"sum {p.total} is odd; no equal split exists to ask about")
    b = p.total // 2
    k = len(p.values)
    a_big = 1000 * b
    z = k * a_big + b
    m = z + 1
    ys = [v + a_big for v in p.values] + [a_big] * k
    ls = tuple(ceil_number(Fraction(m, y)) + 1 for y in ys)
    items = tuple(
        Item(Fraction(y), Fraction(y), Fraction(big)) for y, big in zip(ys, ls)
    )
    game = Instance(Fraction(z), Fraction(0), items, CookiesGoal(Fraction(m)))
    return ReductionCertificate(
        KIND_INITIAL, p.values, game, Fraction(m, z), ls
    )


def reduce_3partition_to_discrete(
    values: tuple[int, ...], m: int
) -> ReductionCertificate:
    """Equal-sum grouping question as a discrete-timestep deadline game.

    Items (a_i, B*a_i, L), income B*sigma per step, deadline m + 2B:
    the target M is reachable iff the values split into m equal-sum
    groups, one spent per buying step.  When the raw values would make
    income or M non-integral the multiset is scaled by m first, which
    leaves the question unchanged; the certificate records the scale.
    """
    k = len(values)
    if m < 1 or k != 3 * m:
        raise NotTripletCount(f"{k} values cannot form {m} triples")
    if any(v < 1 or v != int(v) for v in values):
        raise InputError("values must be positive integers")
    scale = 1
    scaled = tuple(int(v) for v in values)
    total = sum(scaled)
    if total % m or (total * (m - 1)) % 2:
        # scaling every value by m fixes both divisibility constraints
        # (m | m*total, and m*(m-1) is always even) and leaves the
        # equal-groups answer unchanged
        scale = m
        scaled = tuple(v * scale for v in scaled)
        total = sum(scaled)
    big_b = (total * k) // 3 + 1
    income = big_b * total // m
    assert income * m == big_b * total, "income must come out integral"
    deadline = m + 2 * big_b
    goal = (total * (m - 1)) // 2 + 2 * big_b * (income + total)
    cash_ceiling = deadline * (income + total)
    ls = tuple(cash_ceiling // (big_b * a) + 2 for a in scaled)
    items = tuple(
        Item(a, big_b * a, big) for a, big in zip(scaled, ls)
    )
    game = DiscreteInstance(income, items, goal, deadline)
    return ReductionCertificate(
        KIND_DISCRETE, tuple(int(v) for v in values), game,
        Fraction(deadline), ls, groups=m, scale=scale,
    )


def reduce_goal_to_rate(inst: Instance) -> Instance:
    """Re-pose a cookie goal as a rate goal by appending one huge item.

    The new item grants rate V and costs exactly the old goal M; V is
    sized so that climbing to it with the original items alone provably
    takes longer than M/r (an upper bound on the optimal M-time), which
    forces any optimal strategy through the new item and makes the two
    optima equal.  V grows exponentially in M*x/(r*y), so expect an
    astronomically large (but exactly represented) V on fixed-cost
    instances of any size.
    """
    if not isinstance(inst.goal, CookiesGoal):
        raise InputError("source instance needs a cookies goal")
    m = inst.goal.value
    z, r = inst.initial_cookies, inst.initial_rate
    if r <= 0:
        raise InputError("needs a positive initial rate")
    x_max = max(it.x for it in inst.items)
    y_min = min(it.y for it in inst.items)
    # Any climb to rate V buys >= (V-r)/x_max copies at >= y_min each;
    # the j-th costs >= y_min/(r + j*x_max) seconds, so the climb takes
    # more than (y_min/x_max)*ln(V/r) - z/r.  Choosing V past
    # r*3**ceil((M+z)*x_max/(r*y_min) + 1) pushes that beyond M/r.
    q = ceil_number((m + z) * x_max / (r * y_min)) + 1
    v = (math.floor(r) + 1) * 3**q
    new_item = Item(v, m, 2)
    return Instance(z, r, inst.items + (new_item,), RateGoal(v))


# ---------------------------------------------------------------------------
# Verification


def _assert_growth_adequate(cert: ReductionCertificate) -> None:
    """Re-check per instance that no second copy can matter."""
    if cert.kind == KIND_RATE:
        game = cert.game
        assert isinstance(game, Instance)
        b = sum(cert.source) // 2
        w = b * b + b + 1
        ceiling = 1 + Fraction(2 * b, w)  # rate with everything bought once
        for it in game.items:
            if not it.y * it.alpha > cert.threshold_time * ceiling:
                raise InputError("growth factor too small for the rate game")
    elif cert.kind == KIND_INITIAL:
        game = cert.game
        assert isinstance(game, Instance) and isinstance(game.goal, CookiesGoal)
        for it in game.items:
            if not it.y * it.alpha > game.goal.value:
                raise InputError("growth factor too small for the cookie game")
    elif cert.kind == KIND_DISCRETE:
        game = cert.game
        assert isinstance(game, DiscreteInstance)
        gains = sum(int(it.x) for it in game.items)
        cash_ceiling = game.deadline * (game.income + gains)
        for it in game.items:
            if not it.y * it.alpha > cash_ceiling:
                raise InputError("growth factor too small for the discrete game")
    else:
        raise InputError(f"unknown certificate kind {cert.kind!r}")


def verify_certificate(
    cert: ReductionCertificate, budget: int = DEFAULT_BUDGET
) -> tuple[bool, bool, bool]:
    """Solve both sides exhaustively; returns (combinatorial, game, agree).

    The combinatorial side is brute-forced.  The game side runs the
    exact oracle against the threshold: ordering enumeration for the
    rate game (small), the single-copy subset sweep for the
    initial-cookies game (2k items make ordering enumeration hopeless,
    and the sweep is exact there), and the discrete decision search.
    """
    _assert_growth_adequate(cert)
    if cert.kind == KIND_RATE:
        comb = has_half_subset(cert.source)
        game = cert.game
        assert isinstance(game, Instance)
        result = brute_force_continuous(
            game, per_item_caps=[1] * game.k, budget=budget
        )
        game_yes = result.best_time <= cert.threshold_time
    elif cert.kind == KIND_INITIAL:
        comb = has_half_subset(cert.source)
        game = cert.game
        assert isinstance(game, Instance)
        result = best_single_copy_time(game)
        game_yes = result.best_time <= cert.threshold_time
    elif cert.kind == KIND_DISCRETE:
        comb = has_equal_groups(cert.source, cert.groups)
        game = cert.game
        assert isinstance(game, DiscreteInstance)
        game_yes = decide_discrete(game, budget=budget)
    else:
        raise InputError(f"unknown certificate kind {cert.kind!r}")
    return comb, game_yes, comb == game_yes


# ---------------------------------------------------------------------------
# JSON


def certificate_to_json(cert: ReductionCertificate) -> dict:
    game_json = (
        discrete_to_json(cert.game)
        if isinstance(cert.game, DiscreteInstance)
        else instance_to_json(cert.game)
    )
    return {
        "kind": cert.kind,
        "source": {"values": list(cert.source)},
        "groups": cert.groups,
        "scale": cert.scale,
        "threshold_time": number_to_json(cert.threshold_time),
        "growth_factors": list(cert.growth_factors),
        "game": game_json,
    }


def certificate_from_json(d: dict) -> ReductionCertificate:
    try:
        kind = d["kind"]
        source = tuple(int(v) for v in d["source"]["values"])
        if kind == KIND_DISCRETE:
            game: Union[Instance, DiscreteInstance] = discrete_from_json(d["game"])
        else:
            game = instance_from_json(d["game"], exact=True)
        return ReductionCertificate(
            kind=kind,
            source=source,
            game=game,
            threshold_time=parse_number(d["threshold_time"], exact=True),
            growth_factors=tuple(int(v) for v in d["growth_factors"]),
            groups=int(d.get("groups", 0)),
            scale=int(d.get("scale", 1)),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"bad certificate: {e}") from e
