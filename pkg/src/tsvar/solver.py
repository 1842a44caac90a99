"""Scalarized solves with isoperimetric constraints.

Boundary values are enforced by construction: the unknowns are the
interior samples only.  Equality constraints are handled by an augmented
Lagrangian outer loop; the inner minimizer is Polak-Ribiere conjugate
gradient with a secant-initialized Armijo backtracking line search
(plain gradient descent stalls on densely sampled scales, whose interior
Hessian is discrete-Laplacian conditioned).

Multiplier sign convention: the reported lambda makes the combined
integrand  F = L + sum_i lambda_i * G_i  stationary, i.e.
delta L[y; eta] + sum_i lambda_i * delta G_i[y; eta] = 0 for admissible
eta.  The Euler-Lagrange residual and all first-order checks use the
same F.
"""

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
import scipy.linalg as sla

from . import expressions as ex
from .calculus import GridFunction
from .errors import (
    DegenerateScaleError,
    DomainError,
    EvalError,
    LatticeError,
)


class SolveStatus(str, Enum):
    CONVERGED = "converged"
    MAX_ITERATIONS = "max_iterations"
    LINE_SEARCH_FAILURE = "line_search_failure"


@dataclass(frozen=True)
class SolverOptions:
    grad_tol: float = 1e-8
    constraint_tol: float = 1e-8
    det_tol: float = 1e-10
    max_inner: int = 10_000
    max_outer: int = 50
    armijo_c: float = 1e-4
    backtrack: float = 0.5
    max_backtracks: int = 60
    penalty_init: float = 1.0
    penalty_growth: float = 10.0
    violation_shrink: float = 0.25
    inner_tol_init: float = 1e-3
    multistart: int = 1
    start_spread: float = 0.5
    seed: int = 0

    def replace(self, **kw):
        from dataclasses import replace
        return replace(self, **kw)


class ScalarObjective:
    """Weighted sum of the problem's objectives, or a single one by index."""

    def __init__(self, weights=None, objective_index=None):
        if (weights is None) == (objective_index is None):
            raise DomainError("give exactly one of weights or objective_index")
        if weights is not None:
            w = np.atleast_1d(np.asarray(weights, dtype=float))
            if w.ndim != 1 or not np.all(np.isfinite(w)):
                raise DomainError("weights must be a finite vector")
            self.weights = w
            self.objective_index = None
        else:
            self.weights = None
            self.objective_index = int(objective_index)

    def combined(self, p):
        """The scalarized integrand as a single expression."""
        if self.objective_index is not None:
            if not 0 <= self.objective_index < p.num_objectives:
                raise DomainError(
                    f"objective index {self.objective_index} out of range"
                )
            return p.objectives[self.objective_index]
        if self.weights.size != p.num_objectives:
            raise DomainError(
                f"{self.weights.size} weights for {p.num_objectives} objectives"
            )
        combo = ex.ZERO
        for w, obj in zip(self.weights, p.objectives):
            combo = ex.add(combo, ex.mul(ex.Num(w), obj))
        return combo

    def describe(self):
        if self.objective_index is not None:
            return {"objective_index": self.objective_index}
        return {"weights": self.weights.tolist()}


@dataclass
class SolveResult:
    y: GridFunction
    multipliers: np.ndarray
    objective: float
    constraint_violations: np.ndarray
    grad_norm: float
    iterations: int
    status: SolveStatus
    diagnostics: dict = field(default_factory=dict)


@dataclass(frozen=True)
class ELReport:
    """Euler-Lagrange residual F_v^Delta - F_s on the twice-truncated grid,
    plus the Dubois-Reymond constancy spread of F_v - int_a^t F_s."""

    t: np.ndarray
    residuals: np.ndarray
    max_residual: float
    dr_values: np.ndarray
    dr_mean: np.ndarray
    dr_spread: float


@dataclass(frozen=True)
class BruteForceResult:
    y: GridFunction
    objective: float
    assignment: np.ndarray
    feasible_count: int
    lattice_size: int


# -- scalarized evaluation over the interior unknowns -----------------------

class _Scalarized:
    def __init__(self, p, obj):
        if p.grid.size < 3:
            raise DegenerateScaleError("solving needs at least one interior point")
        self.p = p
        self.n = p.n
        self.size = p.grid.size
        self.interior = self.size - 2
        self.t = p.grid.points[:-1]
        self.mu = p.grid.mu[:-1]
        self.J = obj.combined(p)
        self.Jpart = p.partials(self.J)
        self.cons = [g for g, _ in p.constraints]
        self.targets = np.array([xi for _, xi in p.constraints])
        self.conpart = [p.partials(g) for g in self.cons]
        self.m = len(self.cons)

    def full_values(self, x):
        Y = np.empty((self.size, self.n))
        Y[0] = self.p.alpha
        Y[-1] = self.p.beta
        Y[1:-1] = x.reshape(self.interior, self.n)
        return Y

    def _arrays(self, Y):
        ysig = Y[1:]
        ydel = np.diff(Y, axis=0) / self.mu[:, None]
        return list(ysig.T), list(ydel.T)

    def _integral(self, expr, ycols, vcols):
        vals = ex.eval_values(expr, self.t, ycols, vcols)
        if vals.ndim == 0:
            return float(vals) * float(np.sum(self.mu))
        return float(self.mu @ vals)

    def _interior_grad(self, partials, ycols, vcols):
        """Gradient of the discretized functional w.r.t. interior samples."""
        dy, dv = partials
        I = self.interior
        g = np.empty((I, self.n))
        for k in range(self.n):
            if isinstance(dy[k], ex.Num):
                ls = dy[k].value
            else:
                ls = ex.eval_values(dy[k], self.t, ycols, vcols)
            if isinstance(dv[k], ex.Num):
                lv = np.broadcast_to(dv[k].value, self.t.shape)
            else:
                lv = np.broadcast_to(
                    ex.eval_values(dv[k], self.t, ycols, vcols), self.t.shape
                )
            g[:, k] = self.mu[:I] * np.broadcast_to(ls, self.t.shape)[:I] \
                + lv[:I] - lv[1:I + 1]
        return g.ravel()

    def objective_value(self, x):
        ycols, vcols = self._arrays(self.full_values(x))
        return self._integral(self.J, ycols, vcols)

    def state(self, x):
        """(J value, constraint deviations c = G - xi)."""
        ycols, vcols = self._arrays(self.full_values(x))
        jval = self._integral(self.J, ycols, vcols)
        c = np.array([self._integral(g, ycols, vcols) for g in self.cons])
        return jval, c - self.targets if self.m else np.zeros(0)

    def state_with_grads(self, x):
        """(J value, grad J, c, grad G matrix (m x unknowns))."""
        ycols, vcols = self._arrays(self.full_values(x))
        jval = self._integral(self.J, ycols, vcols)
        gj = self._interior_grad(self.Jpart, ycols, vcols)
        c = np.empty(self.m)
        gc = np.empty((self.m, gj.size))
        for i, g in enumerate(self.cons):
            c[i] = self._integral(g, ycols, vcols) - self.targets[i]
            gc[i] = self._interior_grad(self.conpart[i], ycols, vcols)
        return jval, gj, c, gc

    # -- banded preconditioner ------------------------------------------------

    def _second_arrays(self, expr, ycols, vcols):
        ss, sv, vv = self.p.second_partials(expr)
        N = self.t.size
        n = self.n

        def table(exprs):
            out = np.zeros((n, n, N))
            for k in range(n):
                for l in range(n):
                    e = exprs[k][l]
                    if isinstance(e, ex.Num):
                        if e.value != 0.0:
                            out[k, l] = e.value
                    else:
                        out[k, l] = np.broadcast_to(
                            ex.eval_values(e, self.t, ycols, vcols), (N,)
                        )
            return out

        return table(ss), table(sv), table(vv)

    def banded_preconditioner(self, x, weights):
        """Factorized block-tridiagonal part of the Lagrangian Hessian at x.

        weights holds the current constraint coefficients (lambda + rho*c);
        the rank-m penalty term rho * grad c grad c^T is deliberately left
        out, so preconditioned CG sees an identity plus a rank-m update.
        Returns a callable r -> M^{-1} r, or None when factorization fails.
        """
        try:
            ycols, vcols = self._arrays(self.full_values(x))
            ss, sv, vv = self._second_arrays(self.J, ycols, vcols)
            for w, g in zip(weights, self.cons):
                if w == 0.0:
                    continue
                gss, gsv, gvv = self._second_arrays(g, ycols, vcols)
                ss = ss + w * gss
                sv = sv + w * gsv
                vv = vv + w * gvv
        except EvalError:
            return None

        n, I = self.n, self.interior
        mu = self.mu
        # diagonal blocks: contributions of intervals j-1 and j to unknown j
        diag = (mu[:I] * ss[:, :, :I]
                + sv[:, :, :I] + np.swapaxes(sv, 0, 1)[:, :, :I]
                + vv[:, :, :I] / mu[:I]
                + vv[:, :, 1:I + 1] / mu[1:I + 1])
        # super-diagonal blocks: coupling of unknowns j and j+1 via interval j
        sup = -(np.swapaxes(sv, 0, 1)[:, :, 1:I] + vv[:, :, 1:I] / mu[1:I])

        q = 2 * n - 1
        ab = np.zeros((q + 1, I * n))
        for k in range(n):
            for l in range(n):
                rows = np.arange(I) * n + k
                cols = np.arange(I) * n + l
                off = cols - rows
                if off[0] >= 0:
                    ab[q - off[0], cols] = diag[k, l]
                if I > 1:
                    rows2 = np.arange(I - 1) * n + k
                    cols2 = (np.arange(I - 1) + 1) * n + l
                    ab[q - (cols2[0] - rows2[0]), cols2] = sup[k, l]
        # keep only the upper triangle rows (off >= 0)
        main = ab[q].copy()
        scale = float(np.mean(np.abs(main))) or 1.0
        tau = 0.0
        for _ in range(12):
            try:
                fact = sla.cholesky_banded(ab, lower=False)
            except np.linalg.LinAlgError:
                # indefinite away from the solution: damp the diagonal
                tau = scale * 1e-10 if tau == 0.0 else tau * 100.0
                ab[q] = main + tau
                continue
            return lambda r: sla.cho_solve_banded((fact, False), r)
        return None


# -- inner minimizer ---------------------------------------------------------

def _cg_minimize(fg, f, x0, grad_tol, max_iter, opts, precond=None):
    """Preconditioned Polak-Ribiere+ CG with secant step proposal and
    Armijo acceptance.

    Returns (x, value, grad, flag, iterations) with flag one of
    "converged", "max_iterations", "line_search_failure".
    """
    x = np.array(x0, dtype=float)
    val, g = fg(x)
    apply_m = precond if precond is not None else (lambda r: r)
    z = apply_m(g)
    gz = float(g @ z)
    d = -z
    iters = 0
    flag = "max_iterations"
    prev_alpha = None
    restart_every = max(20, 2 * x.size)
    since_restart = 0

    while iters < max_iter:
        if not g.size or float(np.max(np.abs(g))) <= grad_tol:
            flag = "converged"
            break
        iters += 1
        dg = float(d @ g)
        if dg >= 0.0:
            d = -z
            dg = -gz
            since_restart = 0

        # probe along d to estimate curvature; exact step for quadratics
        probe = prev_alpha if prev_alpha else 1.0 / max(1.0, math.sqrt(float(g @ g)))
        trial = None
        for _ in range(opts.max_backtracks):
            try:
                v1, g1 = fg(x + probe * d)
            except EvalError:
                probe *= opts.backtrack
                continue
            if math.isfinite(v1):
                trial = (probe, v1, g1)
                break
            probe *= opts.backtrack
        if trial is None:
            flag = "line_search_failure"
            break
        s, v1, g1 = trial
        curv = (float(g1 @ d) - dg) / s
        if curv > 0.0:
            alpha = -dg / curv
        else:
            alpha = 2.0 * s

        accepted = None
        if abs(alpha - s) <= 1e-12 * max(abs(alpha), abs(s)):
            if v1 <= val + opts.armijo_c * s * dg:
                accepted = (s, v1, g1)
            else:
                alpha = s
        if accepted is None:
            a = alpha
            ok = False
            for _ in range(opts.max_backtracks):
                fa = f(x + a * d)
                if fa <= val + opts.armijo_c * a * dg:
                    ok = True
                    break
                a *= opts.backtrack
            if not ok and v1 <= val + opts.armijo_c * s * dg:
                # fall back to the probe point, which already passed
                a, fa = s, v1
                ok = True
            if not ok:
                flag = "line_search_failure"
                break
            if a == s:
                accepted = (s, v1, g1)
            else:
                try:
                    va, ga = fg(x + a * d)
                except EvalError:
                    flag = "line_search_failure"
                    break
                accepted = (a, va, ga)

        alpha, val, g_new = accepted
        x = x + alpha * d
        prev_alpha = alpha
        z_new = apply_m(g_new)
        gz_new = float(g_new @ z_new)
        since_restart += 1
        if since_restart >= restart_every or gz == 0.0:
            d = -z_new
            since_restart = 0
        else:
            beta = max(0.0, float(g_new @ (z_new - z)) / gz)
            d = -z_new + beta * d
        g, z, gz = g_new, z_new, gz_new

    return x, val, g, flag, iters


# -- augmented Lagrangian ----------------------------------------------------

def _al_solve(scal, x0, options):
    """Run the outer loop from one start; returns a dict of raw results."""
    m = scal.m

    def make_fg(lam, rho):
        def fg(x):
            jval, gj, c, gc = scal.state_with_grads(x)
            w = lam + rho * c
            return jval + float(lam @ c) + 0.5 * rho * float(c @ c), gj + gc.T @ w
        def fval(x):
            try:
                jval, c = scal.state(x)
            except EvalError:
                return math.inf
            return jval + float(lam @ c) + 0.5 * rho * float(c @ c)
        return fg, fval

    if m == 0:
        lam = np.zeros(0)
        fg, fval = make_fg(lam, 0.0)
        precond = scal.banded_preconditioner(x0, lam)
        x, val, g, flag, iters = _cg_minimize(
            fg, fval, x0, options.grad_tol, options.max_inner, options,
            precond=precond,
        )
        status = {
            "converged": SolveStatus.CONVERGED,
            "max_iterations": SolveStatus.MAX_ITERATIONS,
            "line_search_failure": SolveStatus.LINE_SEARCH_FAILURE,
        }[flag]
        return {
            "x": x, "lam": lam, "c": np.zeros(0), "grad_inf":
            float(np.max(np.abs(g))) if g.size else 0.0,
            "iterations": iters, "status": status, "outer": 0,
            "penalty": 0.0,
        }

    lam = np.zeros(m)
    rho = options.penalty_init
    best_viol = math.inf
    x = np.array(x0, dtype=float)
    total_iters = 0
    inner_tol = max(options.grad_tol, options.inner_tol_init)
    last_flag = "max_iterations"
    grad_inf = math.inf
    c = np.zeros(m)
    outer_done = 0

    for outer in range(options.max_outer):
        fg, fval = make_fg(lam, rho)
        try:
            _, c0 = scal.state(x)
        except EvalError:
            c0 = np.zeros(m)
        precond = scal.banded_preconditioner(x, lam + rho * c0)
        x, val, g, flag, iters = _cg_minimize(
            fg, fval, x, inner_tol, options.max_inner, options,
            precond=precond,
        )
        total_iters += iters
        last_flag = flag
        _, c = scal.state(x)
        viol = float(np.max(np.abs(c)))
        grad_inf = float(np.max(np.abs(g)))
        outer_done = outer + 1
        if grad_inf <= options.grad_tol and viol <= options.constraint_tol:
            lam = lam + rho * c
            status = SolveStatus.CONVERGED
            break
        if viol <= max(options.constraint_tol,
                       options.violation_shrink * best_viol):
            lam = lam + rho * c
        else:
            rho = min(rho * options.penalty_growth, 1e12)
        best_viol = min(best_viol, viol)
        inner_tol = max(options.grad_tol, inner_tol * 0.1)
    else:
        status = (SolveStatus.LINE_SEARCH_FAILURE
                  if last_flag == "line_search_failure"
                  else SolveStatus.MAX_ITERATIONS)

    return {
        "x": x, "lam": lam, "c": c, "grad_inf": grad_inf,
        "iterations": total_iters, "status": status, "outer": outer_done,
        "penalty": rho,
    }


def solve_scalar(p, obj, init=None, options=None):
    """Minimize the scalarized functional subject to the problem's boundary
    values and isoperimetric constraints; returns a stationary candidate."""
    options = options or SolverOptions()
    scal = _Scalarized(p, obj)

    if init is None:
        init = p.linear_interpolant()
    else:
        p.check_function(init)
    x0 = init.values[1:-1].ravel().copy()

    starts = [x0]
    if options.multistart > 1:
        rng = np.random.default_rng(options.seed)
        scale = options.start_spread * max(1.0, float(np.max(np.abs(x0))) if x0.size else 1.0)
        for _ in range(options.multistart - 1):
            starts.append(x0 + scale * rng.standard_normal(x0.shape))

    runs = []
    for idx, xs in enumerate(starts):
        raw = _al_solve(scal, xs, options)
        raw["start_index"] = idx
        raw["objective"] = scal.objective_value(raw["x"])
        runs.append(raw)

    def rank(r):
        ok = r["status"] is SolveStatus.CONVERGED
        viol = float(np.max(np.abs(r["c"]))) if r["c"].size else 0.0
        return (not ok, round(viol, 12), r["objective"])

    best = min(runs, key=rank)
    Y = scal.full_values(best["x"])
    result = SolveResult(
        y=GridFunction(p.grid, Y),
        multipliers=best["lam"],
        objective=best["objective"],
        constraint_violations=best["c"],
        grad_norm=best["grad_inf"],
        iterations=best["iterations"],
        status=best["status"],
        diagnostics={
            "seed": options.seed,
            "outer_iterations": best["outer"],
            "penalty": best["penalty"],
            "start_index": best["start_index"],
            "starts": len(starts),
            "scalarization": obj.describe(),
        },
    )
    return result


# -- first-order condition reports -------------------------------------------

def combined_integrand(p, obj, multipliers):
    """F = L + sum_i lambda_i G_i as a single expression."""
    F = obj.combined(p)
    multipliers = np.atleast_1d(np.asarray(multipliers, dtype=float)) \
        if multipliers is not None else np.zeros(p.num_constraints)
    if multipliers.size != p.num_constraints:
        raise DomainError("one multiplier per constraint is required")
    for lam, (g, _) in zip(multipliers, p.constraints):
        F = ex.add(F, ex.mul(ex.Num(float(lam)), g))
    return F


def el_residual(p, obj, result, multipliers=None):
    """Euler-Lagrange residual of the solved trajectory.

    Residual r(t_i) = F_v^Delta(t_i) - F_s(t_i) on indices 0..N-2, with
    symbolic partials and a forward difference for F_v^Delta; also the
    Dubois-Reymond constancy spread of F_v - int_a^t F_s.  ``result`` may
    be a SolveResult (multipliers taken from it) or a bare GridFunction.
    """
    y = result.y if isinstance(result, SolveResult) else result
    if multipliers is None and isinstance(result, SolveResult):
        multipliers = result.multipliers
    p.check_function(y)
    F = combined_integrand(p, obj, multipliers)
    dy, dv = p.partials(F)
    t = p.grid.points[:-1]
    mu = p.grid.mu[:-1]
    ysig = y.values[1:]
    ydel = np.diff(y.values, axis=0) / mu[:, None]
    ycols, vcols = list(ysig.T), list(ydel.T)

    N = t.size
    Fs = np.empty((N, p.n))
    Fv = np.empty((N, p.n))
    for k in range(p.n):
        Fs[:, k] = np.broadcast_to(ex.eval_values(dy[k], t, ycols, vcols), t.shape)
        Fv[:, k] = np.broadcast_to(ex.eval_values(dv[k], t, ycols, vcols), t.shape)

    res = (Fv[1:] - Fv[:-1]) / mu[:-1, None] - Fs[:-1]
    running = np.vstack([np.zeros((1, p.n)),
                         np.cumsum(mu[:, None] * Fs, axis=0)[:-1]])
    dr = Fv - running
    dr_mean = dr.mean(axis=0)
    return ELReport(
        t=t[:-1],
        residuals=res,
        max_residual=float(np.max(np.abs(res))) if res.size else 0.0,
        dr_values=dr,
        dr_mean=dr_mean,
        dr_spread=float(np.max(np.abs(dr - dr_mean))) if dr.size else 0.0,
    )


def regularity_probe(p, y, directions=None, seed=0):
    """Determinant of the matrix of constraint first variations
    delta G_i[y; v_j]; a value above det_tol signals the normal case in
    which multipliers exist."""
    m = p.num_constraints
    if m < 1:
        raise DomainError("regularity probe needs at least one constraint")
    p.check_function(y)
    if directions is None:
        rng = np.random.default_rng(seed)
        directions = []
        for _ in range(m):
            vals = np.zeros((p.grid.size, p.n))
            vals[1:-1] = rng.standard_normal((p.grid.size - 2, p.n))
            directions.append(GridFunction(p.grid, vals))
    else:
        directions = list(directions)
        if len(directions) != m:
            raise DomainError(f"need exactly {m} probe directions, got {len(directions)}")
        for v in directions:
            p.check_function(v)
            ends = max(float(np.max(np.abs(v.values[0]))),
                       float(np.max(np.abs(v.values[-1]))))
            if ends > 1e-12:
                raise DomainError("probe directions must vanish at the endpoints")
    M = np.empty((m, m))
    for i in range(m):
        g, _ = p.constraints[i]
        for j, v in enumerate(directions):
            M[i, j] = p.first_variation(g, y.values, v.values)
    return float(np.linalg.det(M))


# -- exhaustive lattice oracle ------------------------------------------------

def brute_force_oracle(p, obj, bounds=(-4.0, 4.0), step=1e-3, feas_tol=None,
                       cap=20_000_000, chunk=1 << 20):
    """Exhaustively minimize over a lattice of interior values.

    Only for purely discrete scales with at most 3 interior points and at
    most 4 unknowns; refuses (LatticeError) when the lattice exceeds the
    cap or no lattice point satisfies the constraints to feas_tol
    (default: the lattice step).
    """
    if not p.grid.is_discrete:
        raise LatticeError("brute force requires a purely discrete scale")
    interior = p.grid.size - 2
    if interior < 1:
        raise DegenerateScaleError("no interior points to search over")
    if interior > 3 or interior * p.n > 4:
        raise LatticeError("too many unknowns for exhaustive search")
    lo, hi = float(bounds[0]), float(bounds[1])
    if not lo < hi:
        raise DomainError("bounds must satisfy lo < hi")
    step = float(step)
    if step <= 0:
        raise DomainError("step must be positive")
    if feas_tol is None:
        feas_tol = step

    K = int(round((hi - lo) / step)) + 1
    lattice = np.linspace(lo, hi, K)
    u = interior * p.n
    total = K ** u
    if total > cap:
        raise LatticeError(f"lattice of {total} points exceeds cap {cap}")

    J = obj.combined(p)
    t = p.grid.points[:-1]
    mu = p.grid.mu[:-1]
    N = t.size

    best_val = math.inf
    best_assignment = None
    feasible_count = 0

    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total))
        multi = np.unravel_index(idx, (K,) * u)
        uvals = [lattice[ix] for ix in multi]

        def point_col(j, k):
            if j == 0:
                return p.alpha[k]
            if j == p.grid.size - 1:
                return p.beta[k]
            return uvals[(j - 1) * p.n + k]

        acc = 0.0
        feas = True
        for i in range(N):
            ycols = [point_col(i + 1, k) for k in range(p.n)]
            vcols = [(point_col(i + 1, k) - point_col(i, k)) / mu[i]
                     for k in range(p.n)]
            acc = acc + mu[i] * ex.eval_values_raw(J, t[i], ycols, vcols)
        objv = np.broadcast_to(np.asarray(acc, dtype=float), idx.shape).copy()

        mask = np.isfinite(objv)
        for g, xi in p.constraints:
            gacc = 0.0
            for i in range(N):
                ycols = [point_col(i + 1, k) for k in range(p.n)]
                vcols = [(point_col(i + 1, k) - point_col(i, k)) / mu[i]
                         for k in range(p.n)]
                gacc = gacc + mu[i] * ex.eval_values_raw(g, t[i], ycols, vcols)
            gv = np.broadcast_to(np.asarray(gacc, dtype=float), idx.shape)
            mask &= np.isfinite(gv) & (np.abs(gv - xi) <= feas_tol)

        feasible_count += int(mask.sum())
        if not mask.any():
            continue
        objv[~mask] = math.inf
        j = int(np.argmin(objv))
        if objv[j] < best_val:
            best_val = float(objv[j])
            best_assignment = np.array([uv[j] if np.ndim(uv) else float(uv)
                                        for uv in uvals])

    if best_assignment is None:
        raise LatticeError("no feasible lattice point")

    Y = np.empty((p.grid.size, p.n))
    Y[0] = p.alpha
    Y[-1] = p.beta
    Y[1:-1] = best_assignment.reshape(interior, p.n)
    return BruteForceResult(
        y=GridFunction(p.grid, Y),
        objective=best_val,
        assignment=best_assignment,
        feasible_count=feasible_count,
        lattice_size=total,
    )
