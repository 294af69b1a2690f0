import random
from fractions import Fraction

import pytest

from idleopt.model import CookiesGoal, Instance, Item, RateGoal


def F(a, b=1):
    return Fraction(a, b)


def make_inst(items, goal, z=0, r=1):
    """Exact-mode instance from (x, y, alpha) tuples."""
    return Instance(
        Fraction(z),
        Fraction(r),
        tuple(Item(Fraction(x), Fraction(y), Fraction(a)) for x, y, a in items),
        goal,
    )


@pytest.fixture
def fig2():
    return make_inst(
        [(10, 72, 1), (100, 700, 1)], CookiesGoal(Fraction(60000))
    )


@pytest.fixture
def paper_pair():
    """The rising-cost worked example: (10, 80, 6/5) and (90, 800, 11/10)."""
    return Instance(
        Fraction(0),
        Fraction(1),
        (
            Item(Fraction(10), Fraction(80), Fraction(6, 5)),
            Item(Fraction(90), Fraction(800), Fraction(11, 10)),
        ),
        CookiesGoal(Fraction(100000)),
    )


def random_small_instance(rng: random.Random, max_items=3, max_param=20, max_goal=200,
                          alphas=(1, 2, Fraction(3, 2)), rate_goal_ok=False):
    """Small exact instance for oracle cross-checks."""
    k = rng.randint(1, max_items)
    items = []
    for _ in range(k):
        x = rng.randint(1, max_param)
        y = rng.randint(1, max_param)
        a = rng.choice(alphas)
        items.append(Item(Fraction(x), Fraction(y), Fraction(a)))
    if rate_goal_ok and rng.random() < 0.3:
        goal = RateGoal(Fraction(rng.randint(2, 40)))
    else:
        goal = CookiesGoal(Fraction(rng.randint(1, max_goal)))
    return Instance(Fraction(0), Fraction(1), tuple(items), goal)
