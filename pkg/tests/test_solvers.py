import random
from fractions import Fraction

import pytest

from idleopt import analytic
from idleopt.engine import simulate
from idleopt.errors import AssumptionViolated, InputError, StateSpaceExceeded
from idleopt.model import CookiesGoal, Instance, Item, RateGoal, TimeBudgetGoal
from idleopt.oracle import brute_force_continuous
from idleopt.solvers import (
    METHOD_GREEDY_EFF,
    METHOD_GREEDY_RATIO,
    argmin_unimodal_int,
    rescale_to_integer_rates,
    solve_fixed_dp,
    solve_greedy,
    solve_local_search,
    solve_one_item_as_solution,
    solve_time_budget,
    solve_tuple_dp,
    solve_two_item_structured,
    two_item_sweep,
)

from conftest import make_inst, random_small_instance


# --- rate-indexed DP -------------------------------------------------------


def test_fixed_dp_matches_one_item_closed_form():
    inst = make_inst([(1, 5, 1)], CookiesGoal(Fraction(20)))
    sol, stats = solve_fixed_dp(inst)
    one = analytic.solve_one_item(inst)
    assert sol.total_time == one.total_time
    assert stats.states_visited == stats.memo_size > 0


def test_fixed_dp_fig2_switch_structure(fig2):
    sol, _ = solve_fixed_dp(fig2)
    assert sol.strategy.count(0) == 161
    # rate when the first big item is bought
    first_big = sol.strategy.index(1)
    assert 1 + 10 * first_big == 1611


def test_fixed_dp_rate_goal_single_purchase():
    inst = make_inst([(1, 5, 1)], RateGoal(Fraction(2)))
    sol, _ = solve_fixed_dp(inst)
    assert sol.strategy == (0,)
    assert sol.total_time == 5


def test_fixed_dp_rejects_rising_costs_and_fractional_rates():
    with pytest.raises(InputError):
        solve_fixed_dp(make_inst([(1, 5, 2)], CookiesGoal(Fraction(20))))
    with pytest.raises(InputError):
        solve_fixed_dp(
            make_inst([(Fraction(1, 2), 5, 1)], CookiesGoal(Fraction(20)))
        )
    with pytest.raises(InputError):
        solve_fixed_dp(make_inst([(1, 5, 1)], CookiesGoal(Fraction(20)), z=3))


def test_fixed_dp_state_cap():
    with pytest.raises(StateSpaceExceeded):
        solve_fixed_dp(
            make_inst([(1, 1, 1)], CookiesGoal(Fraction(10**7))), state_cap=100
        )


def test_rescale_preserves_times():
    inst = make_inst([(Fraction(1, 2), 5, 1), (Fraction(3, 2), 7, 1)],
                     CookiesGoal(Fraction(40)))
    scaled, scale = rescale_to_integer_rates(inst)
    assert scale == 2
    sol, _ = solve_fixed_dp(scaled)
    direct, _ = solve_tuple_dp(inst)
    assert sol.total_time == direct.total_time


# --- count-tuple DP --------------------------------------------------------


def test_tuple_dp_single_item_matches_closed_form():
    inst = make_inst([(2, 3, 2)], CookiesGoal(Fraction(500)))
    sol, _ = solve_tuple_dp(inst)
    one = analytic.solve_one_item(inst)
    assert sol.total_time == one.total_time
    assert sol.strategy == tuple([0] * one.k_star)


def test_tuple_dp_paper_pair_thirty_purchases(paper_pair):
    sol, stats = solve_tuple_dp(paper_pair)
    assert len(sol.strategy) == 30
    greedy = solve_greedy(paper_pair, METHOD_GREEDY_EFF)
    assert sol.total_time <= greedy.total_time
    assert stats.peak_bound_per_item == (40, 51)
    assert simulate(sol.strategy, paper_pair).total_time == sol.total_time


def test_tuple_dp_bank_covers_everything():
    # enough cookies to buy every worthwhile copy outright at t=0
    inst = make_inst([(5, 10, 10)], CookiesGoal(Fraction(50)), z=100)
    sol, _ = solve_tuple_dp(inst)
    report = simulate(sol.strategy, inst)
    assert report.buying_phase_end == 0
    assert all(t == 0 for t, _, _ in report.purchase_times)


def test_tuple_dp_initial_cookies_against_oracle():
    from idleopt.errors import BudgetExceeded

    rng = random.Random(99)
    checked = 0
    while checked < 25:
        inst = random_small_instance(rng, max_items=2, max_param=8, max_goal=60)
        inst = Instance(
            Fraction(rng.randint(0, 30)), inst.initial_rate, inst.items, inst.goal
        )
        try:
            res = brute_force_continuous(inst, budget=200_000)
        except BudgetExceeded:
            continue  # cheap fixed-cost items explode the ordering count
        sol, _ = solve_tuple_dp(inst)
        assert sol.total_time == res.best_time
        checked += 1


def test_tuple_dp_rate_goal_bounds():
    inst = make_inst([(3, 4, 2)], RateGoal(Fraction(10)))
    sol, stats = solve_tuple_dp(inst)
    assert stats.peak_bound_per_item == (3,)
    assert len(sol.strategy) == 3
    assert sol.total_time == simulate(sol.strategy, inst).total_time


def test_tuple_dp_state_cap():
    with pytest.raises(StateSpaceExceeded):
        solve_tuple_dp(
            make_inst([(1, 1, 1), (1, 1, 1)], CookiesGoal(Fraction(10**6))),
            state_cap=1000,
        )


def test_tuple_dp_never_buys_above_goal_price():
    rng = random.Random(41)
    for _ in range(40):
        inst = random_small_instance(rng, max_items=2, max_param=10, max_goal=80)
        goal = inst.goal
        if not isinstance(goal, CookiesGoal):
            continue
        sol, _ = solve_tuple_dp(inst)
        counts = [0] * inst.k
        for i in sol.strategy:
            price = inst.items[i].y * inst.items[i].alpha ** counts[i]
            assert price <= goal.value
            counts[i] += 1


# --- structured two-item search -------------------------------------------


def test_argmin_unimodal():
    for lo, hi, f in [
        (0, 100, lambda s: (s - 37) ** 2),
        (0, 5, lambda s: s),
        (0, 5, lambda s: -s),
        (3, 3, lambda s: 1),
        (0, 60, lambda s: abs(2 * s - 61)),  # two-point plateau at the bottom
    ]:
        arg, val = argmin_unimodal_int(f, lo, hi)
        assert val == min(f(s) for s in range(lo, hi + 1))


def test_structured_matches_fixed_dp_above_threshold(fig2):
    s1 = solve_two_item_structured(fig2, validate=True)
    s2, _ = solve_fixed_dp(fig2)
    assert s1.total_time == s2.total_time
    assert s1.strategy.count(0) == 161


def test_structured_falls_back_below_threshold():
    inst = make_inst([(10, 72, 1), (100, 700, 1)], CookiesGoal(Fraction(1000)))
    sol = solve_two_item_structured(inst)
    res = brute_force_continuous(inst)
    assert sol.total_time == res.best_time


def test_structured_rejects_degenerate_pair():
    inst = make_inst([(1, 10, 1), (2, 20, 1)], CookiesGoal(Fraction(10**6)))
    with pytest.raises(AssumptionViolated):
        solve_two_item_structured(inst)


def test_structured_random_cross_check():
    rng = random.Random(7)
    done = 0
    while done < 25:
        x1, y1 = rng.randint(1, 6), rng.randint(2, 12)
        x2, y2 = rng.randint(1, 30), rng.randint(13, 40)
        i1 = Item(Fraction(x1), Fraction(y1), Fraction(1))
        i2 = Item(Fraction(x2), Fraction(y2), Fraction(1))
        if not (i2.y > i1.y and i2.x / i2.y > i1.x / i1.y):
            continue
        th = analytic.two_item_thresholds(i1, i2, 1)
        m = th.goal_threshold + rng.randint(0, 50)
        inst = Instance(Fraction(0), Fraction(1), (i1, i2), CookiesGoal(Fraction(m)))
        dp, _ = solve_fixed_dp(inst)
        st = solve_two_item_structured(inst, validate=True)
        assert st.total_time == dp.total_time
        done += 1


# --- sweep ------------------------------------------------------------------


def test_sweep_single_row():
    inst = make_inst([(10, 72, 1), (100, 700, 1)], CookiesGoal(Fraction(60000)))
    rows, best = two_item_sweep(inst, r_max=0)
    assert len(rows) == 1 and best == 0
    assert rows[0][2] == 1  # pure item-2 strategy switches at the start


def test_sweep_dominated_second_item_is_monotone():
    # item 2 priced so badly it never helps: the curve only climbs
    inst = make_inst([(10, 20, 1), (1, 500, 1)], CookiesGoal(Fraction(5000)))
    rows, best = two_item_sweep(inst)
    assert best > 0
    times = [t for _, t, _ in rows]
    assert all(times[i] <= times[i + 1] for i in range(best, len(times) - 1))


def test_sweep_requires_two_fixed_cost_items():
    with pytest.raises(InputError):
        two_item_sweep(make_inst([(1, 1, 1)], CookiesGoal(Fraction(10))))
    with pytest.raises(InputError):
        two_item_sweep(
            make_inst([(1, 1, 2), (2, 3, 1)], CookiesGoal(Fraction(10)))
        )


# --- greedy ------------------------------------------------------------------


def test_greedy_eff_paper_prefix(paper_pair):
    sol = solve_greedy(paper_pair, METHOD_GREEDY_EFF)
    assert sol.strategy[:8] == (0, 0, 0, 0, 0, 0, 1, 1)
    assert not sol.optimal


def test_greedy_ratio_falls_into_the_trap():
    # the big item has the better x/y ratio, so ratio-greedy saves 9999s for it
    inst = make_inst(
        [(1, 10, 2), (10000, 9999, 2)], CookiesGoal(Fraction(10000))
    )
    ratio = solve_greedy(inst, METHOD_GREEDY_RATIO)
    assert ratio.strategy[0] == 1
    eff = solve_greedy(inst, METHOD_GREEDY_EFF)
    assert eff.strategy[0] == 0
    assert eff.total_time < ratio.total_time


def test_greedy_nothing_worth_buying():
    inst = make_inst([(1, 50, 1)], CookiesGoal(Fraction(20)))
    sol = solve_greedy(inst, METHOD_GREEDY_EFF)
    assert sol.strategy == ()
    assert sol.total_time == 20


def test_greedy_rate_goal_reaches_it():
    inst = make_inst([(2, 5, Fraction(3, 2)), (7, 11, 2)], RateGoal(Fraction(30)))
    sol = solve_greedy(inst, METHOD_GREEDY_EFF)
    report = simulate(sol.strategy, inst)
    assert report.final_rate >= 30
    assert sol.total_time == report.total_time < 10**9


def test_greedy_time_is_simulated_truth():
    rng = random.Random(12)
    for _ in range(30):
        inst = random_small_instance(rng)
        for policy in (METHOD_GREEDY_EFF, METHOD_GREEDY_RATIO):
            sol = solve_greedy(inst, policy)
            assert sol.total_time == simulate(sol.strategy, inst).total_time


# --- local search ------------------------------------------------------------


def test_local_search_zero_iterations_returns_init():
    inst = make_inst([(1, 5, 1), (3, 11, 1)], CookiesGoal(Fraction(200)))
    greedy = solve_greedy(inst, METHOD_GREEDY_EFF)
    sol = solve_local_search(inst, seed=5, iterations=0)
    assert sol.strategy == greedy.strategy


def test_local_search_deterministic_per_seed():
    inst = make_inst([(1, 5, 1), (3, 11, 1)], CookiesGoal(Fraction(200)))
    a = solve_local_search(inst, seed=42, iterations=300, init="random")
    b = solve_local_search(inst, seed=42, iterations=300, init="random")
    assert a.strategy == b.strategy and a.total_time == b.total_time


def test_local_search_often_reaches_the_optimum():
    inst = make_inst([(2, 5, 1), (9, 17, 1)], CookiesGoal(Fraction(150)))
    best = solve_fixed_dp(inst)[0].total_time
    hits = 0
    for seed in range(8):
        sol = solve_local_search(inst, seed=seed, iterations=400, init="random")
        assert sol.total_time >= best
        hits += sol.total_time == best
    assert hits >= 4


# --- time budget --------------------------------------------------------------


def _tuple_inner(inst):
    return solve_tuple_dp(inst)[0]


def test_time_budget_pure_waiting_is_exact():
    inst = Instance(
        Fraction(0), Fraction(1),
        (Item(Fraction(1), Fraction(10**9), Fraction(1)),),
        TimeBudgetGoal(Fraction(100), "cookies"),
    )
    value, sol = solve_time_budget(inst, _tuple_inner)
    assert value == 100
    assert sol.strategy == ()


def test_time_budget_single_purchase_rate():
    inst = Instance(
        Fraction(0), Fraction(1),
        (Item(Fraction(1), Fraction(5), Fraction(1)),),
        TimeBudgetGoal(Fraction(5), "rate"),
    )
    value, sol = solve_time_budget(inst, _tuple_inner)
    assert value == 2
    assert sol.strategy == (0,)


def test_time_budget_inverse_of_cookie_solver():
    base = make_inst([(10, 72, 1), (100, 700, 1)], CookiesGoal(Fraction(600)))
    opt, _ = solve_fixed_dp(base)
    inst = Instance(
        base.initial_cookies, base.initial_rate, base.items,
        TimeBudgetGoal(opt.total_time, "cookies"),
    )
    value, _ = solve_time_budget(inst, _tuple_inner)
    assert value >= 600


def test_closed_form_solution_wrapper():
    inst = make_inst([(1, 10, 1)], CookiesGoal(Fraction(100)))
    sol = solve_one_item_as_solution(inst)
    assert sol.strategy == tuple([0] * 9)
    assert sol.optimal
