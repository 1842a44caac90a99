import numpy as np
import pytest

import tsvar.expressions as ex
from tsvar import (
    DomainError,
    GridFunction,
    LatticeError,
    ScalarObjective,
    SolveStatus,
    SolverOptions,
    TimeScale,
    VariationalProblem,
    brute_force_oracle,
    constraint_gateaux,
    el_residual,
    gateaux,
    regularity_probe,
    solve_scalar,
)
from tsvar.solver import _Scalarized

UNIT = TimeScale.interval(0, 1)


def paper_problem():
    ts = TimeScale.from_points([0, 1, 2])
    return VariationalProblem(
        ts.sample(1.0), 1,
        [ex.parse("y1^2", 1), ex.parse("(y1-2)^2", 1)],
        alpha=[0.0], beta=[0.0], timescale=ts,
    )


def dirichlet_problem(res=1e-2):
    return VariationalProblem(UNIT.sample(res), 1, [ex.parse("v1^2", 1)],
                              alpha=[0.0], beta=[1.0], timescale=UNIT)


def isoperimetric_problem(res=1e-2):
    return VariationalProblem(
        UNIT.sample(res), 1, [ex.parse("v1^2", 1)],
        constraints=[(ex.parse("y1", 1), 1.0 / 6.0)],
        alpha=[0.0], beta=[0.0], timescale=UNIT,
    )


def scalarized_paper_minimizer(gamma1):
    # closed form: d/da [g a^2 + (1-g)((a-2)^2+4)] = 0  =>  a = 2(1-g)
    return 2.0 * (1.0 - gamma1)


def test_solve_paper_example():
    p = paper_problem()
    res = solve_scalar(p, ScalarObjective(weights=[0.5, 0.5]))
    assert res.status is SolveStatus.CONVERGED
    assert abs(res.y.values[1, 0] - scalarized_paper_minimizer(0.5)) <= 1e-6
    assert abs(res.objective - 3.0) <= 1e-9
    assert res.multipliers.size == 0


def test_solve_continuous_dirichlet():
    p = dirichlet_problem(1e-3)
    res = solve_scalar(p, ScalarObjective(objective_index=0))
    assert res.status is SolveStatus.CONVERGED
    assert np.max(np.abs(res.y.values[:, 0] - p.grid.points)) <= 1e-3
    assert abs(res.objective - 1.0) <= 2e-3


def test_solve_isoperimetric_multiplier():
    p = isoperimetric_problem(1e-2)
    res = solve_scalar(p, ScalarObjective(objective_index=0))
    assert res.status is SolveStatus.CONVERGED
    exact = p.grid.points * (1 - p.grid.points)
    assert np.max(np.abs(res.y.values[:, 0] - exact)) <= 5e-3
    assert abs(res.objective - 1.0 / 3.0) <= 5e-3
    assert abs(res.multipliers[0] - (-4.0)) <= 5e-2
    assert np.max(np.abs(res.constraint_violations)) <= 1e-8


def test_converged_respects_tolerances():
    p = isoperimetric_problem(0.05)
    opts = SolverOptions()
    res = solve_scalar(p, ScalarObjective(objective_index=0), options=opts)
    assert res.status is SolveStatus.CONVERGED
    assert res.grad_norm <= opts.grad_tol
    assert np.max(np.abs(res.constraint_violations)) <= opts.constraint_tol


def test_gradient_matches_finite_differences():
    from helpers import random_grid, random_smooth_expr

    rng = np.random.default_rng(41)
    for _ in range(25):
        grid = random_grid(rng, min_points=3, max_points=7)
        n = int(rng.integers(1, 3))
        p = VariationalProblem(
            grid, n,
            [random_smooth_expr(rng, n, depth=2)],
            constraints=[(random_smooth_expr(rng, n, depth=1), 0.0)],
            alpha=rng.uniform(-1, 1, n), beta=rng.uniform(-1, 1, n),
        )
        scal = _Scalarized(p, ScalarObjective(objective_index=0))
        x = rng.uniform(-1, 1, (grid.size - 2) * n)
        lam = rng.uniform(-1, 1, 1)
        rho = 2.0

        jval, gj, c, gc = scal.state_with_grads(x)
        grad = gj + gc.T @ (lam + rho * c)

        def al_value(xx):
            jv, cc = scal.state(xx)
            return jv + float(lam @ cc) + 0.5 * rho * float(cc @ cc)

        eps = 1e-6
        for idx in range(x.size):
            step = np.zeros_like(x)
            step[idx] = eps
            fd = (al_value(x + step) - al_value(x - step)) / (2 * eps)
            assert abs(grad[idx] - fd) <= 1e-5 * (1 + abs(grad[idx]))


def test_multiplier_equation_discretized():
    rng = np.random.default_rng(42)
    p = isoperimetric_problem(0.05)
    obj = ScalarObjective(objective_index=0)
    res = solve_scalar(p, obj)
    assert res.status is SolveStatus.CONVERGED
    lam = res.multipliers
    for _ in range(10):
        vals = np.zeros((p.grid.size, 1))
        vals[1:-1, 0] = rng.standard_normal(p.grid.size - 2)
        eta = GridFunction(p.grid, vals)
        dL = gateaux(p, 0, res.y, eta)
        dG = constraint_gateaux(p, 0, res.y, eta)
        assert abs(dL + lam[0] * dG) <= 1e-5


def test_el_residual_zero_for_linear_solution():
    p = dirichlet_problem(0.1)
    y = GridFunction.from_callable(p.grid, lambda t: t)
    rep = el_residual(p, ScalarObjective(objective_index=0), y)
    assert rep.max_residual == 0.0
    assert rep.dr_spread <= 1e-14


def test_el_residual_at_scalarized_optimum():
    p = paper_problem()
    obj = ScalarObjective(weights=[0.5, 0.5])
    res = solve_scalar(p, obj)
    rep = el_residual(p, obj, res)
    assert rep.max_residual <= 1e-6
    assert rep.residuals.shape == (1, 1)  # indices 0..N-2 only


def test_el_residual_detects_non_stationary_point():
    p = paper_problem()
    obj = ScalarObjective(weights=[0.5, 0.5])
    vals = np.zeros((3, 1))
    vals[1, 0] = 1.6  # optimum is at 1.0
    rep = el_residual(p, obj, GridFunction(p.grid, vals))
    assert rep.max_residual > 0.1


def test_el_residual_bound_at_converged_discrete():
    rng = np.random.default_rng(43)
    pts = np.concatenate([[0.0], np.cumsum(rng.uniform(0.4, 1.1, 5))])
    ts = TimeScale.from_points(pts)
    p = VariationalProblem(ts.sample(1.0), 1,
                           [ex.parse("v1^2 + (y1-1)^2", 1)],
                           alpha=[0.0], beta=[0.0], timescale=ts)
    opts = SolverOptions()
    res = solve_scalar(p, ScalarObjective(objective_index=0), options=opts)
    assert res.status is SolveStatus.CONVERGED
    rep = el_residual(p, ScalarObjective(objective_index=0), res)
    mu_min = np.min(p.grid.mu[:-1])
    assert rep.max_residual <= 10 * opts.grad_tol / mu_min


def test_dr_spread_bound_at_converged():
    p = isoperimetric_problem(0.05)
    opts = SolverOptions()
    obj = ScalarObjective(objective_index=0)
    res = solve_scalar(p, obj, options=opts)
    rep = el_residual(p, obj, res)
    span = p.grid.b - p.grid.a
    assert rep.dr_spread <= 10 * opts.grad_tol * span


def test_el_residual_consistency_order():
    # residual of the sampled analytic solution of 2y'' = 2y shrinks with
    # the sampling resolution at first order
    exact = lambda t: np.sinh(t) / np.sinh(1.0)

    def residual_at(res):
        p = VariationalProblem(UNIT.sample(res), 1,
                               [ex.parse("v1^2 + y1^2", 1)],
                               alpha=[0.0], beta=[1.0], timescale=UNIT)
        y = GridFunction.from_callable(p.grid, exact)
        rep = el_residual(p, ScalarObjective(objective_index=0), y)
        return rep.max_residual

    r1 = residual_at(0.02)
    r2 = residual_at(0.01)
    assert r1 / r2 >= 1.7


def test_solver_against_analytic_sinh():
    p = VariationalProblem(UNIT.sample(5e-3), 1, [ex.parse("v1^2 + y1^2", 1)],
                           alpha=[0.0], beta=[1.0], timescale=UNIT)
    res = solve_scalar(p, ScalarObjective(objective_index=0))
    assert res.status is SolveStatus.CONVERGED
    exact = np.sinh(p.grid.points) / np.sinh(1.0)
    assert np.max(np.abs(res.y.values[:, 0] - exact)) <= 5e-3


def test_solve_vector_valued_coupled():
    # minimize int v1^2 + v2^2 + (y1-y2)^2 with y(0)=(0,0), y(1)=(1,-1);
    # writing w = y1 - y2 and s = y1 + y2 decouples to w'' = 2w, s'' = 0
    # with s == 0, so y1 = sinh(sqrt(2) t)/sinh(sqrt(2)) and y2 = -y1
    p = VariationalProblem(
        UNIT.sample(5e-3), 2, [ex.parse("v1^2 + v2^2 + (y1-y2)^2", 2)],
        alpha=[0.0, 0.0], beta=[1.0, -1.0], timescale=UNIT,
    )
    res = solve_scalar(p, ScalarObjective(objective_index=0))
    assert res.status is SolveStatus.CONVERGED
    root2 = np.sqrt(2.0)
    y1 = np.sinh(root2 * p.grid.points) / np.sinh(root2)
    assert np.max(np.abs(res.y.values[:, 0] - y1)) <= 5e-3
    assert np.max(np.abs(res.y.values[:, 1] + y1)) <= 5e-3


def test_solve_vector_valued_two_constraints():
    # separable pair of the scalar isoperimetric instance; multipliers -4, +4
    p = VariationalProblem(
        UNIT.sample(1e-2), 2, [ex.parse("v1^2 + v2^2", 2)],
        constraints=[(ex.parse("y1", 2), 1.0 / 6.0),
                     (ex.parse("y2", 2), -1.0 / 6.0)],
        alpha=[0.0, 0.0], beta=[0.0, 0.0], timescale=UNIT,
    )
    res = solve_scalar(p, ScalarObjective(objective_index=0))
    assert res.status is SolveStatus.CONVERGED
    bump = p.grid.points * (1 - p.grid.points)
    assert np.max(np.abs(res.y.values[:, 0] - bump)) <= 5e-3
    assert np.max(np.abs(res.y.values[:, 1] + bump)) <= 5e-3
    assert abs(res.multipliers[0] + 4.0) <= 5e-2
    assert abs(res.multipliers[1] - 4.0) <= 5e-2

    v1 = GridFunction(p.grid, np.column_stack([bump, np.zeros_like(bump)]))
    v2 = GridFunction(p.grid, np.column_stack([np.zeros_like(bump), bump]))
    det = regularity_probe(p, res.y, [v1, v2])
    assert abs(det - 1.0 / 36.0) <= 1e-4


def test_brute_force_vector_valued():
    ts = TimeScale.from_points([0, 1, 2])
    p = VariationalProblem(
        ts.sample(1.0), 2, [ex.parse("(y1-0.4)^2 + (y2+0.3)^2", 2)],
        alpha=[0.0, 0.0], beta=[0.0, 0.0], timescale=ts,
    )
    res = brute_force_oracle(p, ScalarObjective(objective_index=0),
                             bounds=(-1.0, 1.0), step=1e-2)
    assert np.max(np.abs(res.assignment - [0.4, -0.3])) <= 1e-2


def test_regularity_probe_examples():
    p = isoperimetric_problem(1e-3)
    y = p.linear_interpolant()
    v1 = GridFunction.from_callable(p.grid, lambda t: t * (1 - t))
    det = regularity_probe(p, y, [v1])
    assert abs(det - 1.0 / 6.0) <= 1e-5

    zero = GridFunction(p.grid, np.zeros((p.grid.size, 1)))
    assert regularity_probe(p, y, [zero]) == 0.0


def test_regularity_probe_identical_constraints():
    ts = TimeScale.from_points([0, 1, 2, 3])
    p = VariationalProblem(
        ts.sample(1.0), 1, [ex.parse("v1^2", 1)],
        constraints=[(ex.parse("y1", 1), 0.1), (ex.parse("y1", 1), 0.1)],
        alpha=[0.0], beta=[0.0], timescale=ts,
    )
    det = regularity_probe(p, p.linear_interpolant(), seed=7)
    assert abs(det) <= 1e-12


def test_regularity_probe_direction_validation():
    p = isoperimetric_problem(0.1)
    y = p.linear_interpolant()
    with pytest.raises(DomainError):
        regularity_probe(p, y, [])
    bad = GridFunction.from_callable(p.grid, lambda t: t + 1.0)
    with pytest.raises(DomainError):
        regularity_probe(p, y, [bad])
    with pytest.raises(DomainError):
        regularity_probe(dirichlet_problem(0.1),
                         dirichlet_problem(0.1).linear_interpolant())


def test_brute_force_paper_example():
    p = paper_problem()
    res = brute_force_oracle(p, ScalarObjective(weights=[0.5, 0.5]),
                             bounds=(-4, 4), step=1e-3)
    assert abs(res.assignment[0] - 1.0) <= 1e-3
    assert abs(res.objective - 3.0) <= 1e-5


def test_brute_force_unconstrained_min_at_zero():
    ts = TimeScale.from_points([0, 1, 2])
    p = VariationalProblem(ts.sample(1.0), 1, [ex.parse("y1^2", 1)],
                           alpha=[0.0], beta=[0.0], timescale=ts)
    res = brute_force_oracle(p, ScalarObjective(objective_index=0),
                             bounds=(-2, 2), step=1e-3)
    assert abs(res.assignment[0]) <= 1e-9


def test_brute_force_refusals():
    p = paper_problem()
    with pytest.raises(LatticeError):
        brute_force_oracle(p, ScalarObjective(objective_index=0),
                           bounds=(-4, 4), step=1e-7)  # lattice over cap
    con = VariationalProblem(
        p.grid, 1, [ex.parse("y1^2", 1)],
        constraints=[(ex.parse("y1", 1), 0.123456789)],
        alpha=[0.0], beta=[0.0],
    )
    with pytest.raises(LatticeError):
        # zero feasibility tolerance and no exact lattice hit
        brute_force_oracle(con, ScalarObjective(objective_index=0),
                           bounds=(-1, 1), step=0.5, feas_tol=0.0)
    dense = dirichlet_problem(0.5)
    with pytest.raises(LatticeError):
        brute_force_oracle(dense, ScalarObjective(objective_index=0))


def test_brute_force_with_feasible_constraint():
    p = VariationalProblem(
        TimeScale.from_points([0, 1, 2]).sample(1.0), 1,
        [ex.parse("y1^2", 1)],
        constraints=[(ex.parse("y1", 1), 0.5)],
        alpha=[0.0], beta=[0.0],
    )
    res = brute_force_oracle(p, ScalarObjective(objective_index=0),
                             bounds=(-1, 1), step=1e-3)
    assert abs(res.assignment[0] - 0.5) <= 1e-3


def test_solve_agrees_with_brute_force():
    rng = np.random.default_rng(44)
    for _ in range(5):
        pts = np.concatenate([[0.0], np.cumsum(rng.uniform(0.8, 1.2, 3))])
        ts = TimeScale.from_points(pts)
        cv = rng.uniform(0.3, 1.0)
        cy = rng.uniform(1.0, 2.0)
        r = rng.uniform(-0.5, 0.5)
        expr = ex.parse(f"{cv}*v1^2 + {cy}*(y1-({r}))^2", 1)
        p = VariationalProblem(ts.sample(1.0), 1, [expr],
                               alpha=[rng.uniform(-0.5, 0.5)],
                               beta=[rng.uniform(-0.5, 0.5)], timescale=ts)
        solved = solve_scalar(p, ScalarObjective(objective_index=0))
        assert solved.status is SolveStatus.CONVERGED
        oracle = brute_force_oracle(p, ScalarObjective(objective_index=0),
                                    bounds=(-2, 2), step=1e-3)
        assert abs(solved.objective - oracle.objective) <= 1e-5
        assert np.max(np.abs(solved.y.values[1:-1].ravel()
                             - oracle.assignment)) <= 1e-3


def test_status_max_iterations():
    p = dirichlet_problem(0.1)
    bad_init = GridFunction.from_callable(p.grid, lambda t: np.sin(5 * t))
    res = solve_scalar(p, ScalarObjective(objective_index=0), init=bad_init,
                       options=SolverOptions(max_inner=1))
    assert res.status in (SolveStatus.MAX_ITERATIONS,
                          SolveStatus.LINE_SEARCH_FAILURE)
    assert res.iterations <= 1


def test_multistart_deterministic():
    p = isoperimetric_problem(0.1)
    opts = SolverOptions(multistart=3, seed=5)
    a = solve_scalar(p, ScalarObjective(objective_index=0), options=opts)
    b = solve_scalar(p, ScalarObjective(objective_index=0), options=opts)
    assert np.array_equal(a.y.values, b.y.values)
    assert a.diagnostics == b.diagnostics


def test_scalar_objective_validation():
    p = paper_problem()
    with pytest.raises(DomainError):
        ScalarObjective()
    with pytest.raises(DomainError):
        ScalarObjective(weights=[0.5], objective_index=0)
    with pytest.raises(DomainError):
        ScalarObjective(weights=[0.5, 0.5, 0.1]).combined(p)
    with pytest.raises(DomainError):
        ScalarObjective(objective_index=9).combined(p)


def test_solve_requires_interior_point():
    ts = TimeScale.from_points([0, 1])
    p = VariationalProblem(ts.sample(1.0), 1, [ex.parse("y1^2", 1)],
                           alpha=[0.0], beta=[0.0], timescale=ts)
    from tsvar import DegenerateScaleError
    with pytest.raises(DegenerateScaleError):
        solve_scalar(p, ScalarObjective(objective_index=0))
