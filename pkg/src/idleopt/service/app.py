"""FastAPI app exposing the solver toolkit.

Error contract: invalid input answers 400 (or FastAPI's own 422 for
schema violations); a solver that refuses a well-formed request
(budget, state space, structural assumptions) answers 422 with a
machine-readable code under ``error.code``.
"""

from __future__ import annotations

import math
from typing import Optional

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import analytic
from ..discrete import schedule_to_json, simulate_discrete
from ..engine import simulate
from ..errors import (
    AssumptionViolated,
    BudgetExceeded,
    InputError,
    SolverError,
    StateSpaceExceeded,
)
from ..model import (
    CookiesGoal,
    Instance,
    RateGoal,
    TimeBudgetGoal,
    instance_to_json,
    validate_instance,
)
from ..numeric import number_to_json
from ..oracle import (
    DEFAULT_BUDGET,
    best_single_copy_time,
    brute_force_continuous,
    brute_force_discrete,
)
from ..reductions import (
    PartitionInstance,
    certificate_from_json,
    certificate_to_json,
    reduce_3partition_to_discrete,
    reduce_goal_to_rate,
    reduce_partition_to_initial_cookies,
    reduce_partition_to_rate,
    verify_certificate,
)
from ..solvers import (
    METHOD_CLOSED_FORM,
    METHOD_FIXED_DP,
    METHOD_GREEDY_EFF,
    METHOD_GREEDY_RATIO,
    METHOD_LOCAL,
    METHOD_ORACLE,
    METHOD_TUPLE_DP,
    METHOD_TWO_ITEM,
    DPStats,
    Solution,
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
from ..numeric import close
from . import schemas

app = FastAPI(title="idleopt", version="0.1.0")

METHODS = (
    METHOD_FIXED_DP,
    METHOD_TUPLE_DP,
    METHOD_TWO_ITEM,
    METHOD_GREEDY_RATIO,
    METHOD_GREEDY_EFF,
    METHOD_LOCAL,
    METHOD_ORACLE,
    METHOD_CLOSED_FORM,
)


@app.exception_handler(InputError)
async def input_error(request: Request, exc: InputError):
    return JSONResponse(
        status_code=400, content={"error": {"code": "input", "message": str(exc)}}
    )


@app.exception_handler(SolverError)
async def solver_error(request: Request, exc: SolverError):
    code = {
        BudgetExceeded: "budget_exceeded",
        StateSpaceExceeded: "state_space_exceeded",
        AssumptionViolated: "assumption_violated",
    }.get(type(exc), "solver")
    return JSONResponse(
        status_code=422, content={"error": {"code": code, "message": str(exc)}}
    )


def run_method(
    inst: Instance,
    method: str,
    *,
    seed: int = 0,
    iterations: int = 2000,
    budget: Optional[int] = None,
    state_cap: Optional[int] = None,
    check: bool = False,
) -> tuple[Solution, Optional[DPStats]]:
    """Dispatch one solver run; shared by /solve, /compare and the CLI."""
    if method not in METHODS:
        raise InputError(f"unknown method {method!r}; choose from {METHODS}")
    stats: Optional[DPStats] = None
    cap = state_cap if state_cap is not None else 100_000_000
    if method == METHOD_FIXED_DP:
        rescaled, _ = rescale_to_integer_rates(inst)
        sol, stats = solve_fixed_dp(rescaled, state_cap=cap)
        sol = Solution(sol.strategy, sol.total_time, sol.method, sol.optimal)
    elif method == METHOD_TUPLE_DP:
        sol, stats = solve_tuple_dp(inst, state_cap=cap)
    elif method == METHOD_TWO_ITEM:
        sol = solve_two_item_structured(inst, validate=check)
    elif method in (METHOD_GREEDY_EFF, METHOD_GREEDY_RATIO):
        sol = solve_greedy(inst, method)
    elif method == METHOD_LOCAL:
        sol = solve_local_search(inst, seed=seed, iterations=iterations)
    elif method == METHOD_ORACLE:
        res = brute_force_continuous(
            inst, budget=budget if budget is not None else DEFAULT_BUDGET
        )
        sol = Solution(res.best_strategy, res.best_time, METHOD_ORACLE, True)
    else:
        sol = solve_one_item_as_solution(inst)
    if check and not isinstance(inst.goal, TimeBudgetGoal):
        report = simulate(sol.strategy, inst)
        if not close(report.total_time, sol.total_time):
            raise SolverError(
                f"validation failed: reported {sol.total_time} but the "
                f"strategy simulates to {report.total_time}"
            )
    return sol, stats


@app.get("/health")
def health():
    return {"status": "ok", "version": app.version}


@app.post("/solve", response_model=schemas.SolveResponse)
def solve(req: schemas.SolveRequest):
    inst = req.instance.to_core(req.exact)
    achieved = None
    if isinstance(inst.goal, TimeBudgetGoal):
        inner = lambda i: run_method(
            i,
            req.inner,
            seed=req.seed,
            iterations=req.iterations,
            budget=req.budget,
            state_cap=req.state_cap,
        )[0]
        value, sol = solve_time_budget(inst, inner)
        achieved = number_to_json(value)
        stats = None
    else:
        sol, stats = run_method(
            inst,
            req.method,
            seed=req.seed,
            iterations=req.iterations,
            budget=req.budget,
            state_cap=req.state_cap,
            check=req.check,
        )
    payload = sol.to_json()
    return schemas.SolveResponse(
        solution=schemas.SolutionPayload(**payload),
        stats=schemas.DPStatsPayload(**stats.to_json()) if stats else None,
        achieved_value=achieved,
    )


@app.post("/simulate", response_model=schemas.SimulateResponse)
def simulate_endpoint(req: schemas.SimulateRequest):
    inst = req.instance.to_core(req.exact)
    report = simulate(req.strategy.purchases, inst)
    return schemas.SimulateResponse(**report.to_json())


@app.post("/analyze")
def analyze(req: schemas.AnalyzeRequest):
    """Every threshold we can compute for the instance, as one JSON blob."""
    inst = req.instance.to_core(req.exact)
    out: dict = {
        "violations": [
            {"code": v.code, "detail": v.detail, "item": v.item_index}
            for v in validate_instance(inst)
        ]
    }
    goal = inst.goal
    if isinstance(goal, CookiesGoal):
        out["stop_rate_threshold"] = number_to_json(
            analytic.stop_rate_threshold(
                [(it.x, it.y) for it in inst.items], goal.value
            )
        )
    if inst.k == 1 and not isinstance(goal, TimeBudgetGoal) and inst.initial_cookies == 0:
        one = analytic.solve_one_item(inst)
        out["one_item"] = {
            "k_star": one.k_star,
            "total_time": number_to_json(one.total_time),
            "tie_at_boundary": one.tie_at_boundary,
            "log_estimate": analytic.harmonic_estimate(
                inst.items[0], one.k_star, inst
            ),
        }
    if inst.k == 2 and isinstance(goal, CookiesGoal):
        i1, i2 = inst.items
        if i1.alpha == 1 == i2.alpha:
            try:
                th = analytic.two_item_thresholds(i1, i2, goal.value)
                out["two_item"] = {
                    "swap_rate": number_to_json(th.swap_rate),
                    "goal_factor": number_to_json(th.goal_factor),
                    "goal_threshold": number_to_json(th.goal_threshold),
                    "trailing_ones_bound": th.trailing_ones_bound,
                    # observed switch rates tend to sit near half the swap rate
                    "half_swap_rate": number_to_json(th.swap_rate / 2),
                }
            except AssumptionViolated as e:
                out["two_item"] = {"assumption_violated": str(e)}
        if i1.alpha > 1 and i2.alpha > 1:
            out["trailing_run_bound"] = analytic.trailing_run_bound(
                i1.x, i2.x, i1.alpha, i2.alpha
            )
    dom = [
        {"item": i, "rate": analytic.greedy_dominance_rate(it.alpha, it.x)}
        for i, it in enumerate(inst.items)
        if it.alpha > 1
    ]
    if dom:
        out["greedy_dominance_rates"] = dom
        out["greedy_dominance_rate_max"] = max(d["rate"] for d in dom)
    out["efficiency_scores"] = [
        number_to_json(analytic.efficiency_score(it.y, it.x, inst.initial_rate))
        for it in inst.items
    ] if inst.initial_rate > 0 else None
    return out


@app.post("/sweep", response_model=schemas.SweepResponse)
def sweep(req: schemas.SweepRequest):
    inst = req.instance.to_core(req.exact)
    rows, best = two_item_sweep(inst, req.r_max)
    return schemas.SweepResponse(
        rows=[
            schemas.SweepRow(
                r=r,
                total_time=number_to_json(t),
                rate_at_switch=number_to_json(g),
            )
            for r, t, g in rows
        ],
        argmin_r=rows[best][0],
        argmin_rate=number_to_json(rows[best][2]),
    )


@app.post("/compare", response_model=schemas.CompareResponse)
def compare(req: schemas.CompareRequest):
    inst = req.instance.to_core(req.exact)
    results: list[tuple[str, Optional[Solution], Optional[str]]] = []
    for method in req.methods:
        try:
            sol, _ = run_method(
                inst,
                method,
                seed=req.seed,
                iterations=req.iterations,
                budget=req.budget,
            )
            results.append((method, sol, None))
        except (SolverError, InputError) as e:
            results.append((method, None, f"{type(e).__name__}: {e}"))
    if all(sol is None for _, sol, _ in results):
        raise SolverError("every requested method failed")
    exact_times = [
        sol.total_time for _, sol, _ in results if sol is not None and sol.optimal
    ]
    pool = exact_times or [
        sol.total_time for _, sol, _ in results if sol is not None
    ]
    base = min(pool)
    baseline = next(
        (
            name
            for name, sol, _ in results
            if sol is not None and sol.total_time == base and (not exact_times or sol.optimal)
        ),
        None,
    )
    rows = []
    for name, sol, err in results:
        if sol is None:
            rows.append(schemas.CompareRow(method=name, error=err))
        else:
            ratio = (
                float(sol.total_time / base)
                if base > 0 and sol.total_time != math.inf
                else None
            )
            rows.append(
                schemas.CompareRow(
                    method=name,
                    total_time=number_to_json(sol.total_time),
                    ratio=ratio,
                )
            )
    return schemas.CompareResponse(rows=rows, baseline=baseline)


@app.post("/reduce")
def reduce(req: schemas.ReduceRequest):
    if req.kind == "m-to-r":
        if req.instance is None:
            raise InputError("m-to-r needs an instance")
        out = reduce_goal_to_rate(req.instance.to_core(exact=True))
        return {"kind": req.kind, "instance": instance_to_json(out)}
    if not req.values:
        raise InputError(f"{req.kind} needs source values")
    values = tuple(int(v) for v in req.values)
    if req.kind == "partition-to-rate":
        cert = reduce_partition_to_rate(PartitionInstance(values))
    elif req.kind == "partition-to-initial":
        cert = reduce_partition_to_initial_cookies(PartitionInstance(values))
    else:
        if req.m is None:
            raise InputError("3partition-to-discrete needs m")
        cert = reduce_3partition_to_discrete(values, req.m)
    return certificate_to_json(cert)


@app.post("/verify", response_model=schemas.VerifyResponse)
def verify(req: schemas.VerifyRequest):
    cert = certificate_from_json(req.certificate)
    comb, game, agree = verify_certificate(
        cert, budget=req.budget if req.budget is not None else DEFAULT_BUDGET
    )
    return schemas.VerifyResponse(
        combinatorial_answer=comb, game_answer=game, agree=agree
    )


@app.post("/discrete/decide", response_model=schemas.DecideResponse)
def discrete_decide(req: schemas.DecideRequest):
    dinst = req.instance.to_core()
    answer, witness = brute_force_discrete(
        dinst, budget=req.budget if req.budget is not None else DEFAULT_BUDGET
    )
    return schemas.DecideResponse(
        answer=answer,
        witness=schemas.ScheduleModel(**schedule_to_json(witness))
        if witness is not None
        else None,
    )


@app.post("/discrete/simulate", response_model=schemas.DiscreteSimResponse)
def discrete_simulate(req: schemas.DiscreteSimRequest):
    dinst = req.instance.to_core()
    cookies, feasible = simulate_discrete(dinst, req.schedule.steps)
    return schemas.DiscreteSimResponse(cookies_at_deadline=cookies, feasible=feasible)
