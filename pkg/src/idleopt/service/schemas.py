"""Request/response models for the solver service.

Numbers on the wire are JSON numbers, or "p/q" strings in exact mode
(exact mode is a per-request flag).  These models are the one parsing
path for instances whether they arrive over HTTP or from CLI files.
"""

from __future__ import annotations

from typing import Literal, Optional, Union

from pydantic import BaseModel, Field

from ..discrete import DiscreteInstance, discrete_from_json
from ..model import Instance, instance_from_json

NumberJson = Union[int, float, str]


class ItemModel(BaseModel):
    x: NumberJson
    y: NumberJson
    alpha: NumberJson = 1


class GoalModel(BaseModel):
    type: Literal["cookies", "rate", "time_budget"]
    value: NumberJson
    maximize: Literal["cookies", "rate"] = "cookies"


class InstanceModel(BaseModel):
    initial_cookies: NumberJson = 0
    initial_rate: NumberJson = 1
    items: list[ItemModel]
    goal: GoalModel

    def to_core(self, exact: bool) -> Instance:
        return instance_from_json(self.model_dump(), exact=exact)


class StrategyModel(BaseModel):
    purchases: list[int]


class DiscreteInstanceModel(BaseModel):
    initial_cookies: int = 0
    initial_rate: int
    items: list[ItemModel]
    goal: GoalModel
    deadline: int

    def to_core(self) -> DiscreteInstance:
        return discrete_from_json(self.model_dump())


class ScheduleModel(BaseModel):
    steps: list[list[int]]


class SolveRequest(BaseModel):
    instance: InstanceModel
    method: str = "tuple-dp"
    exact: bool = False
    check: bool = Field(False, description="re-simulate and assert the result")
    seed: int = 0
    iterations: int = 2000
    budget: Optional[int] = None
    state_cap: Optional[int] = None
    inner: str = "tuple-dp"  # inner solver for time-budget goals


class SolutionPayload(BaseModel):
    strategy: StrategyModel
    total_time: Optional[NumberJson]  # null when unreachable
    reachable: bool
    method: str
    optimal: bool


class DPStatsPayload(BaseModel):
    states_visited: int
    memo_size: int
    peak_bound_per_item: list[int]


class SolveResponse(BaseModel):
    solution: SolutionPayload
    stats: Optional[DPStatsPayload] = None
    achieved_value: Optional[NumberJson] = None  # time-budget goals only


class SimulateRequest(BaseModel):
    instance: InstanceModel
    strategy: StrategyModel
    exact: bool = False


class PurchaseRow(BaseModel):
    time: Optional[NumberJson]
    item: int
    price: NumberJson
    leftover: NumberJson


class SimulateResponse(BaseModel):
    purchases: list[PurchaseRow]
    buying_phase_end: Optional[NumberJson]
    total_time: Optional[NumberJson]
    reachable: bool
    final_rate: NumberJson


class AnalyzeRequest(BaseModel):
    instance: InstanceModel
    exact: bool = False


class SweepRequest(BaseModel):
    instance: InstanceModel
    r_max: Optional[int] = None
    exact: bool = False


class SweepRow(BaseModel):
    r: int
    total_time: NumberJson
    rate_at_switch: NumberJson


class SweepResponse(BaseModel):
    rows: list[SweepRow]
    argmin_r: int
    argmin_rate: NumberJson


class CompareRequest(BaseModel):
    instance: InstanceModel
    methods: list[str]
    exact: bool = False
    seed: int = 0
    iterations: int = 2000
    budget: Optional[int] = None


class CompareRow(BaseModel):
    method: str
    total_time: Optional[NumberJson] = None
    ratio: Optional[float] = None
    error: Optional[str] = None


class CompareResponse(BaseModel):
    rows: list[CompareRow]
    baseline: Optional[str] = None  # method whose time anchors the ratios


class ReduceRequest(BaseModel):
    kind: Literal[
        "partition-to-rate",
        "partition-to-initial",
        "3partition-to-discrete",
        "m-to-r",
    ]
    values: Optional[list[int]] = None  # partition kinds
    m: Optional[int] = None  # 3partition kind
    instance: Optional[InstanceModel] = None  # m-to-r kind


class VerifyRequest(BaseModel):
    certificate: dict
    budget: Optional[int] = None


class VerifyResponse(BaseModel):
    combinatorial_answer: bool
    game_answer: bool
    agree: bool


class DecideRequest(BaseModel):
    instance: DiscreteInstanceModel
    budget: Optional[int] = None


class DecideResponse(BaseModel):
    answer: bool
    witness: Optional[ScheduleModel] = None


class DiscreteSimRequest(BaseModel):
    instance: DiscreteInstanceModel
    schedule: ScheduleModel


class DiscreteSimResponse(BaseModel):
    cookies_at_deadline: int
    feasible: bool
