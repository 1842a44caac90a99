"""Request and response models for the solver service."""

from typing import Optional

from pydantic import BaseModel, Field


class SolverOverrides(BaseModel):
    grad_tol: Optional[float] = None
    constraint_tol: Optional[float] = None
    det_tol: Optional[float] = None
    max_inner: Optional[int] = None
    max_outer: Optional[int] = None
    penalty_init: Optional[float] = None
    multistart: Optional[int] = None
    seed: Optional[int] = None

    def as_dict(self):
        return {k: v for k, v in self.model_dump().items() if v is not None}


class SolutionPayload(BaseModel):
    t: list[float]
    values: list[list[float]]


class ConstraintValue(BaseModel):
    value: float
    target: float
    violation: float


class EvalRequest(BaseModel):
    problem: str
    solution: str
    resolution: Optional[float] = None


class EvalResponse(BaseModel):
    objectives: list[float]
    constraints: list[ConstraintValue]


class SolveRequest(BaseModel):
    problem: str
    weights: Optional[list[float]] = None
    objective_index: Optional[int] = Field(
        default=None, description="1-based objective index"
    )
    resolution: Optional[float] = None
    overrides: SolverOverrides = SolverOverrides()


class SolveResponse(BaseModel):
    status: str
    converged: bool
    objective: float
    objective_vector: list[float]
    multipliers: list[float]
    constraint_violations: list[float]
    grad_norm: float
    iterations: int
    el_residual_max: float
    dr_spread: float
    diagnostics: dict
    solution: SolutionPayload


class ParetoRequest(BaseModel):
    problem: str
    k: int = Field(ge=2, description="points per weight axis")
    resolution: Optional[float] = None
    warm_start: bool = True
    overrides: SolverOverrides = SolverOverrides()


class ParetoEntryModel(BaseModel):
    gamma: list[float]
    objectives: list[float]
    diagnostics: dict
    solution: SolutionPayload


class ParetoResponse(BaseModel):
    entries: list[ParetoEntryModel]
    dominated_removed: int
    failures: list[dict]


class CheckRequest(BaseModel):
    problem: str
    solution: str
    multipliers: Optional[list[float]] = None
    weights: Optional[list[float]] = None
    nc: bool = False
    resolution: Optional[float] = None
    residual_tol: float = 1e-6
    dr_tol: float = 1e-6
    constraint_tol: float = 1e-8
    nc_tol: float = 1e-6


class NCReportModel(BaseModel):
    objective_index: int = Field(description="1-based objective index")
    improvement: float
    verdict: str
    resolved_objective: float


class CheckResponse(BaseModel):
    el_residual_max: float
    dr_spread: float
    boundary_error: float
    constraint_violations: list[float]
    multipliers_used: list[float]
    multipliers_recovered: bool
    residual_t: list[float]
    residual_rows: list[list[float]]
    nc_reports: Optional[list[NCReportModel]] = None
    passed: bool
    failed_checks: list[str]


class ErrorBody(BaseModel):
    code: str
    message: str


class HealthResponse(BaseModel):
    status: str
    version: str
