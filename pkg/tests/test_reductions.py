from fractions import Fraction

import pytest

from idleopt.discrete import DiscreteInstance
from idleopt.engine import simulate
from idleopt.errors import InputError, NotTripletCount, OddSum
from idleopt.model import CookiesGoal, Instance, RateGoal
from idleopt.oracle import best_single_copy_time, brute_force_continuous
from idleopt.reductions import (
    PartitionInstance,
    certificate_from_json,
    certificate_to_json,
    has_equal_groups,
    has_half_subset,
    has_triple_partition,
    reduce_3partition_to_discrete,
    reduce_goal_to_rate,
    reduce_partition_to_initial_cookies,
    reduce_partition_to_rate,
    standard_shape,
    verify_certificate,
)

from conftest import make_inst


def test_combinatorial_checkers():
    assert has_half_subset((1, 2, 3))
    assert not has_half_subset((3, 3, 3, 5))
    assert not has_half_subset((1, 2))  # odd total
    assert has_equal_groups((1, 1, 1, 1, 1, 5), 2)
    assert not has_triple_partition((1, 1, 1, 1, 1, 5), 2)
    assert has_triple_partition((1, 1, 1, 1, 1, 1), 2)
    assert not has_equal_groups((1, 1, 1, 1, 1, 7), 2)
    assert standard_shape((2, 2, 2, 2, 2, 2), 2)
    assert not standard_shape((1, 1, 1, 1, 1, 5), 2)


def test_rate_reduction_yes_instance():
    cert = reduce_partition_to_rate(PartitionInstance((1, 2, 3)))
    game = cert.game
    assert isinstance(game, Instance) and isinstance(game.goal, RateGoal)
    assert game.goal.value == Fraction(16, 13)  # W = 13
    assert cert.threshold_time == 3
    assert game.items[0].x == Fraction(1, 13)
    comb, ans, agree = verify_certificate(cert)
    assert (comb, ans, agree) == (True, True, True)


def test_rate_reduction_no_instance():
    cert = reduce_partition_to_rate(PartitionInstance((3, 3, 3, 5)))
    assert cert.game.goal.value == Fraction(64, 57)  # W = 57
    assert cert.threshold_time == 7
    assert verify_certificate(cert) == (False, False, True)


def test_rate_reduction_odd_sum():
    with pytest.raises(OddSum):
        reduce_partition_to_rate(PartitionInstance((1, 2)))


def test_rate_reduction_single_even_value_is_a_no():
    # {2} has an even total but no balanced split; still emitted, decides NO
    cert = reduce_partition_to_rate(PartitionInstance((2,)))
    assert verify_certificate(cert) == (False, False, True)


def test_yes_side_buys_one_class_within_threshold():
    cert = reduce_partition_to_rate(PartitionInstance((1, 2, 3)))
    game = cert.game
    # the {1, 2} class sums to B; buying it meets the deadline
    report = simulate([0, 1], game)
    assert report.total_time <= cert.threshold_time
    assert report.final_rate >= game.goal.value


def test_initial_cookies_reduction_values():
    cert = reduce_partition_to_initial_cookies(PartitionInstance((1, 2, 3)))
    game = cert.game
    assert game.initial_cookies == 9003
    assert game.initial_rate == 0
    assert isinstance(game.goal, CookiesGoal) and game.goal.value == 9004
    assert cert.threshold_time == Fraction(9004, 9003)
    assert len(game.items) == 6  # three originals, three fillers
    assert verify_certificate(cert) == (True, True, True)


def test_initial_cookies_reduction_no_instance():
    cert = reduce_partition_to_initial_cookies(PartitionInstance((3, 3, 3, 5)))
    assert cert.game.initial_cookies == 28007
    assert cert.game.goal.value == 28008
    assert verify_certificate(cert) == (False, False, True)


def test_initial_cookies_game_passes_validation():
    from idleopt.model import validate_instance

    cert = reduce_partition_to_initial_cookies(PartitionInstance((1, 2, 3)))
    assert validate_instance(cert.game) == []  # r=0 allowed because z>0


def test_discrete_reduction_values():
    cert = reduce_3partition_to_discrete((1, 1, 1, 1, 1, 1), 2)
    game = cert.game
    assert isinstance(game, DiscreteInstance)
    assert (game.income, game.deadline, game.goal_cookies) == (39, 28, 1173)
    assert cert.threshold_time == 28
    assert verify_certificate(cert) == (True, True, True)


def test_discrete_reduction_no_instance():
    cert = reduce_3partition_to_discrete((1, 1, 1, 1, 1, 7), 2)
    assert verify_certificate(cert) == (False, False, True)


def test_discrete_reduction_triplet_count_guard():
    with pytest.raises(NotTripletCount):
        reduce_3partition_to_discrete((1, 2, 3, 4), 2)


def test_discrete_reduction_scales_for_integrality():
    # odd total with m=2 would make the income and goal fractional
    cert = reduce_3partition_to_discrete((1, 1, 1, 1, 1, 2), 2)
    assert cert.scale == 2
    assert verify_certificate(cert) == (False, False, True)


def test_discrete_reduction_indivisible_total_is_a_no():
    cert = reduce_3partition_to_discrete((1, 1, 1, 1, 2, 3), 2)  # total 9, m=2
    comb, game, agree = verify_certificate(cert)
    assert agree and not comb


def test_grouped_reading_diverges_from_triples_exactly_where_documented():
    # {1,1,1,1,1,5}: the game banks its target via groups {5} and {1*5},
    # which no size-3 split can mirror.  The certificate checks groups.
    vals = (1, 1, 1, 1, 1, 5)
    cert = reduce_3partition_to_discrete(vals, 2)
    comb, game, agree = verify_certificate(cert)
    assert (comb, game, agree) == (True, True, True)
    assert not has_triple_partition(vals, 2)
    # on standard-shape instances the two questions coincide
    for vals, m in [((2, 2, 2, 2, 2, 2), 2), ((3, 2, 3, 2, 2, 3), 2)]:
        if standard_shape(vals, m):
            assert has_triple_partition(vals, m) == has_equal_groups(vals, m)


def test_goal_to_rate_small_oracle_equality():
    inst = make_inst([(2, 3, 1)], CookiesGoal(Fraction(6)))
    rinst = reduce_goal_to_rate(inst)
    assert rinst.k == 2
    assert rinst.items[1].y == 6  # the new item costs exactly the goal
    m_time = brute_force_continuous(inst).best_time
    r_time = brute_force_continuous(rinst, budget=10**6).best_time
    assert m_time == r_time


def test_goal_to_rate_forced_structure_when_nothing_affordable():
    inst = make_inst([(1, 10**6, 1)], CookiesGoal(Fraction(50)))
    rinst = reduce_goal_to_rate(inst)
    res = brute_force_continuous(rinst, per_item_caps=[0, 1])
    assert res.best_strategy == (1,)
    assert res.best_time == 50


def test_goal_to_rate_rising_costs():
    inst = make_inst([(2, 3, 2), (5, 8, 3)], CookiesGoal(Fraction(40)))
    rinst = reduce_goal_to_rate(inst)
    m_time = brute_force_continuous(inst).best_time
    r_time = brute_force_continuous(
        rinst, per_item_caps=list(brute_force_caps(rinst)), budget=10**6
    ).best_time
    assert m_time == r_time


def brute_force_caps(rinst):
    # rate-goal default caps explode with the huge appended gain; the
    # original items still never help past their goal-price bound
    from idleopt.oracle import default_caps

    probe = Instance(
        rinst.initial_cookies,
        rinst.initial_rate,
        rinst.items[:-1],
        CookiesGoal(rinst.items[-1].y),
    )
    return default_caps(probe) + [1]


def test_growth_factors_block_second_copies():
    cert = reduce_partition_to_rate(PartitionInstance((2, 4)))
    game = cert.game
    for it in game.items:
        # one extra copy alone blows the deadline even at top rate
        ceiling = 1 + Fraction(2 * 3, 3 * 3 + 3 + 1)
        assert it.y * it.alpha / ceiling > cert.threshold_time
    cert2 = reduce_partition_to_initial_cookies(PartitionInstance((2, 4)))
    for it in cert2.game.items:
        assert it.y * it.alpha > cert2.game.goal.value


def test_certificate_json_round_trip():
    for cert in [
        reduce_partition_to_rate(PartitionInstance((1, 2, 3))),
        reduce_partition_to_initial_cookies(PartitionInstance((1, 2, 3))),
        reduce_3partition_to_discrete((1, 1, 1, 1, 1, 1), 2),
    ]:
        back = certificate_from_json(certificate_to_json(cert))
        assert back == cert
        assert verify_certificate(back)[2]


def test_partition_instance_validation():
    with pytest.raises(InputError):
        PartitionInstance((0, 1))
    with pytest.raises(InputError):
        PartitionInstance(())
