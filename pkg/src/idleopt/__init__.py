"""idleopt: purchase-scheduling solvers for incremental games.

Core model and simulator, exact and heuristic solvers, exhaustive
oracles, hardness-instance generators, plus a FastAPI service and a CLI
that talks to it.
"""

from .analytic import (
    OneItemSolution,
    TwoItemThresholds,
    efficiency_score,
    greedy_dominance_rate,
    should_buy,
    solve_one_item,
    stop_rate_threshold,
    trailing_run_bound,
    two_item_thresholds,
)
from .discrete import DiscreteInstance, decide_discrete, simulate_discrete
from .engine import UNREACHABLE, SimReport, buy_time, buy_time_bounds, simulate
from .errors import (
    AssumptionViolated,
    BudgetExceeded,
    InputError,
    NotTripletCount,
    OddSum,
    SolverError,
    StateSpaceExceeded,
)
from .model import (
    CookiesGoal,
    GameState,
    Goal,
    Instance,
    Item,
    RateGoal,
    TimeBudgetGoal,
    Violation,
    current_cost,
    instance_from_json,
    instance_to_json,
    validate_instance,
)
from .oracle import (
    OracleResult,
    best_single_copy_time,
    brute_force_continuous,
    brute_force_discrete,
)
from .reductions import (
    PartitionInstance,
    ReductionCertificate,
    reduce_3partition_to_discrete,
    reduce_goal_to_rate,
    reduce_partition_to_initial_cookies,
    reduce_partition_to_rate,
    verify_certificate,
)
from .solvers import (
    DPStats,
    Solution,
    solve_fixed_dp,
    solve_greedy,
    solve_local_search,
    solve_time_budget,
    solve_tuple_dp,
    solve_two_item_structured,
)

__version__ = "0.1.0"
