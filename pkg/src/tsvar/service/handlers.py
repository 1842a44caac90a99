"""Use-case layer shared by the HTTP endpoints and the local CLI path."""

import numpy as np

from .. import files
from ..errors import DomainError
from ..pareto import ParetoEntry, nc_crosscheck, weighted_sweep
from ..problems import evaluate
from ..solver import ScalarObjective, SolveStatus, _Scalarized, el_residual, solve_scalar
from . import schemas


def _load_problem(problem_text, resolution, overrides=None):
    spec = files.parse_problem(problem_text)
    p = spec.build(resolution=resolution)
    opts = spec.solver_options()
    if overrides is not None:
        kw = overrides.as_dict()
        if kw:
            opts = opts.replace(**kw)
    return p, opts


def _load_solution(p, solution_text):
    t, vals = files.parse_solution(solution_text)
    return files.solution_to_gridfunction(p, t, vals)


def _payload(y):
    return schemas.SolutionPayload(
        t=[float(t) for t in y.grid.points],
        values=[[float(v) for v in row] for row in y.values],
    )


def _scalarization(p, weights, objective_index):
    """Resolve the CLI-facing weights / 1-based index contract."""
    if weights is not None and objective_index is not None:
        raise DomainError("give either weights or an objective index, not both")
    if weights is not None:
        w = np.asarray(weights, dtype=float)
        if w.size != p.num_objectives:
            raise DomainError(
                f"{w.size} weights for {p.num_objectives} objectives"
            )
        if np.any(w <= 0):
            raise DomainError("all weights must be strictly positive")
        if abs(float(w.sum()) - 1.0) > 1e-9:
            raise DomainError("weights must sum to 1")
        return ScalarObjective(weights=w / w.sum())
    if objective_index is not None:
        if not 1 <= objective_index <= p.num_objectives:
            raise DomainError(
                f"objective index {objective_index} out of range 1..{p.num_objectives}"
            )
        return ScalarObjective(objective_index=objective_index - 1)
    if p.num_objectives == 1:
        return ScalarObjective(objective_index=0)
    raise DomainError("a multi-objective problem needs weights or an objective index")


def run_eval(req: schemas.EvalRequest) -> schemas.EvalResponse:
    p, _ = _load_problem(req.problem, req.resolution)
    y = _load_solution(p, req.solution)
    fv = evaluate(p, y)
    return schemas.EvalResponse(
        objectives=[float(v) for v in fv.objectives],
        constraints=[
            schemas.ConstraintValue(value=float(v), target=float(xi),
                                    violation=float(d))
            for v, (_, xi), d in zip(fv.constraints, p.constraints, fv.violations)
        ],
    )


def run_solve(req: schemas.SolveRequest) -> schemas.SolveResponse:
    p, opts = _load_problem(req.problem, req.resolution, req.overrides)
    obj = _scalarization(p, req.weights, req.objective_index)
    res = solve_scalar(p, obj, options=opts)
    report = el_residual(p, obj, res)
    fv = evaluate(p, res.y)
    return schemas.SolveResponse(
        status=res.status.value,
        converged=res.status is SolveStatus.CONVERGED,
        objective=float(res.objective),
        objective_vector=[float(v) for v in fv.objectives],
        multipliers=[float(v) for v in res.multipliers],
        constraint_violations=[float(v) for v in res.constraint_violations],
        grad_norm=float(res.grad_norm),
        iterations=int(res.iterations),
        el_residual_max=float(report.max_residual),
        dr_spread=float(report.dr_spread),
        diagnostics=res.diagnostics,
        solution=_payload(res.y),
    )


def run_pareto(req: schemas.ParetoRequest) -> schemas.ParetoResponse:
    p, opts = _load_problem(req.problem, req.resolution, req.overrides)
    if p.num_objectives < 2:
        raise DomainError("a Pareto sweep needs at least 2 objectives")
    front = weighted_sweep(p, req.k, options=opts, warm_start=req.warm_start)
    return schemas.ParetoResponse(
        entries=[
            schemas.ParetoEntryModel(
                gamma=[float(g) for g in e.gamma],
                objectives=[float(v) for v in e.objectives],
                diagnostics=e.diagnostics,
                solution=_payload(e.y),
            )
            for e in front.entries
        ],
        dominated_removed=front.dominated_removed,
        failures=front.failures,
    )


def _recover_multipliers(p, obj, y):
    """Least-squares multipliers from discrete stationarity."""
    scal = _Scalarized(p, obj)
    x = y.values[1:-1].ravel()
    _, gj, _, gc = scal.state_with_grads(x)
    A = gc.T
    if A.size == 0:
        raise DomainError("multipliers are not recoverable (no interior gradient)")
    sv = np.linalg.svd(A, compute_uv=False)
    if sv[0] == 0.0 or sv[-1] < 1e-10 * sv[0]:
        raise DomainError(
            "multipliers are not recoverable from this solution; pass them explicitly"
        )
    lam, *_ = np.linalg.lstsq(A, -gj, rcond=None)
    return lam


def run_check(req: schemas.CheckRequest) -> schemas.CheckResponse:
    p, opts = _load_problem(req.problem, req.resolution)
    y = _load_solution(p, req.solution)
    fv = evaluate(p, y)

    weights = req.weights
    if weights is None:
        d = p.num_objectives
        weights = [1.0 / d] * d
    obj = _scalarization(p, weights, None)

    m = p.num_constraints
    recovered = False
    if m == 0:
        lam = np.zeros(0)
        if req.multipliers:
            raise DomainError("multipliers given but the problem has no constraints")
    elif req.multipliers is not None:
        lam = np.asarray(req.multipliers, dtype=float)
        if lam.size != m:
            raise DomainError(f"expected {m} multipliers, got {lam.size}")
    else:
        lam = _recover_multipliers(p, obj, y)
        recovered = True

    report = el_residual(p, obj, y, multipliers=lam)
    boundary_error = max(
        float(np.max(np.abs(y.values[0] - p.alpha))),
        float(np.max(np.abs(y.values[-1] - p.beta))),
    )

    failed = []
    if report.max_residual > req.residual_tol:
        failed.append("el_residual")
    if report.dr_spread > req.dr_tol:
        failed.append("dubois_reymond")
    if boundary_error > req.residual_tol:
        failed.append("boundary")
    if m and float(np.max(np.abs(fv.violations))) > req.constraint_tol:
        failed.append("constraints")

    nc_models = None
    if req.nc:
        if p.num_objectives < 2:
            raise DomainError("the necessity check needs at least 2 objectives")
        entry = ParetoEntry(
            gamma=np.asarray(weights, dtype=float), y=y, objectives=fv.objectives
        )
        nc_models = []
        for i in range(p.num_objectives):
            rep = nc_crosscheck(p, entry, i, options=opts, nc_tol=req.nc_tol)
            nc_models.append(schemas.NCReportModel(
                objective_index=i + 1,
                improvement=rep.improvement,
                verdict=rep.verdict,
                resolved_objective=rep.resolved_objective,
            ))
        if any(r.verdict != "consistent" for r in nc_models):
            failed.append("nc")

    return schemas.CheckResponse(
        el_residual_max=float(report.max_residual),
        dr_spread=float(report.dr_spread),
        boundary_error=boundary_error,
        constraint_violations=[float(v) for v in fv.violations],
        multipliers_used=[float(v) for v in lam],
        multipliers_recovered=recovered,
        residual_t=[float(t) for t in report.t],
        residual_rows=[[float(r) for r in row] for row in report.residuals],
        nc_reports=nc_models,
        passed=not failed,
        failed_checks=failed,
    )
