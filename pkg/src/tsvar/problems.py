"""Variational problem instances and their discretized functionals.

A problem bundles a grid, a dimension, objective integrands L_i, optional
isoperimetric constraints (G_i, xi_i), and fixed boundary values.  Each
functional is the left-rectangle sum  sum_i mu(t_i) * E(t_i, y_sigma(t_i),
y_delta(t_i)); its first variation uses the symbolic partials of E, so
gradients are exact for the discretized functional up to rounding.
"""

from dataclasses import dataclass

import numpy as np

from . import expressions as ex
from .calculus import GridFunction
from .errors import DimensionMismatchError, DomainError, GridMismatchError
from .timescales import GridTimeScale, TimeScale


@dataclass(frozen=True)
class FunctionalValue:
    """Objective values, constraint values, and constraint violations."""

    objectives: np.ndarray
    constraints: np.ndarray
    violations: np.ndarray


class VariationalProblem:
    """Immutable problem instance; evaluation helpers are pure."""

    def __init__(self, grid, n, objectives, constraints=(), alpha=0.0, beta=0.0,
                 timescale=None):
        if not isinstance(grid, GridTimeScale):
            raise TypeError("grid must be a GridTimeScale")
        if grid.size < 2:
            raise DomainError("problem grid needs at least 2 points")
        n = int(n)
        if n < 1:
            raise DomainError("dimension must be >= 1")
        objs = tuple(objectives)
        if not objs:
            raise DomainError("at least one objective is required")
        cons = tuple((g, float(xi)) for g, xi in constraints)
        for e in objs + tuple(g for g, _ in cons):
            if not isinstance(e, ex.Expr):
                raise TypeError("objectives and constraints must be Expr")
            if ex.max_var_index(e) > n:
                raise DomainError(
                    f"expression {ex.to_string(e)!r} uses a variable beyond dimension {n}"
                )
        alpha = np.atleast_1d(np.asarray(alpha, dtype=float))
        beta = np.atleast_1d(np.asarray(beta, dtype=float))
        if alpha.shape != (n,) or beta.shape != (n,):
            raise DimensionMismatchError("alpha and beta must have length n")
        if timescale is not None and not isinstance(timescale, TimeScale):
            raise TypeError("timescale must be a TimeScale")
        self.grid = grid
        self.timescale = timescale
        self.n = n
        self.objectives = objs
        self.constraints = cons
        self.alpha = alpha
        self.beta = beta
        self._partials = {}

    @classmethod
    def from_timescale(cls, ts, resolution, n, objectives, constraints=(),
                       alpha=0.0, beta=0.0):
        return cls(ts.sample(resolution), n, objectives, constraints,
                   alpha, beta, timescale=ts)

    @property
    def num_objectives(self):
        return len(self.objectives)

    @property
    def num_constraints(self):
        return len(self.constraints)

    def partials(self, expr):
        """Cached symbolic partials (dL/dy_k list, dL/dv_k list)."""
        hit = self._partials.get(expr)
        if hit is None:
            dy = [ex.diff(expr, ex.Var("y", k)) for k in range(self.n)]
            dv = [ex.diff(expr, ex.Var("v", k)) for k in range(self.n)]
            hit = (dy, dv)
            self._partials[expr] = hit
        return hit

    def second_partials(self, expr):
        """Cached symbolic second partials as n x n expression tables:
        (d2/ds ds, d2/ds dv, d2/dv dv)."""
        key = ("second", expr)
        hit = self._partials.get(key)
        if hit is None:
            dy, dv = self.partials(expr)
            ss = [[ex.diff(dy[k], ex.Var("y", l)) for l in range(self.n)]
                  for k in range(self.n)]
            sv = [[ex.diff(dy[k], ex.Var("v", l)) for l in range(self.n)]
                  for k in range(self.n)]
            vv = [[ex.diff(dv[k], ex.Var("v", l)) for l in range(self.n)]
                  for k in range(self.n)]
            hit = (ss, sv, vv)
            self._partials[key] = hit
        return hit

    # -- grid views ---------------------------------------------------------

    def check_function(self, y):
        if not isinstance(y, GridFunction):
            raise TypeError("expected a GridFunction")
        if y.dim != self.n:
            raise DimensionMismatchError(
                f"function has dimension {y.dim}, problem has {self.n}"
            )
        if y.grid is not self.grid and not self.grid.matches(y.grid):
            raise GridMismatchError("function grid does not match problem grid")

    def sigma_delta(self, values):
        """(t_k, mu_k, y_sigma, y_delta) arrays over the N integration nodes."""
        t = self.grid.points[:-1]
        mu = self.grid.mu[:-1]
        ysig = values[1:]
        ydel = np.diff(values, axis=0) / mu[:, None]
        return t, mu, ysig, ydel

    def functional(self, expr, values):
        """Discretized integral of expr along the sampled trajectory."""
        t, mu, ysig, ydel = self.sigma_delta(values)
        integrand = ex.eval_values(expr, t, list(ysig.T), list(ydel.T))
        return float(mu @ np.broadcast_to(integrand, t.shape))

    def first_variation(self, expr, values, eta_values):
        """Gateaux derivative of the discretized functional at y along eta."""
        t, mu, ysig, ydel = self.sigma_delta(values)
        esig = eta_values[1:]
        edel = np.diff(eta_values, axis=0) / mu[:, None]
        dy, dv = self.partials(expr)
        ycols, vcols = list(ysig.T), list(ydel.T)
        acc = np.zeros_like(t)
        for k in range(self.n):
            if not _is_zero(dy[k]):
                acc = acc + ex.eval_values(dy[k], t, ycols, vcols) * esig[:, k]
            if not _is_zero(dv[k]):
                acc = acc + ex.eval_values(dv[k], t, ycols, vcols) * edel[:, k]
        return float(mu @ acc)

    def linear_interpolant(self):
        """Default initial trajectory: straight line from alpha to beta."""
        t = self.grid.points
        w = (t - t[0]) / (t[-1] - t[0])
        vals = self.alpha[None, :] + w[:, None] * (self.beta - self.alpha)[None, :]
        return GridFunction(self.grid, vals)

    def __repr__(self):
        return (f"VariationalProblem(n={self.n}, d={self.num_objectives}, "
                f"m={self.num_constraints}, {self.grid!r})")


def _is_zero(e):
    return isinstance(e, ex.Num) and e.value == 0.0


def evaluate(p, y):
    """All objective and constraint functionals of y, with violations."""
    p.check_function(y)
    objs = np.array([p.functional(e, y.values) for e in p.objectives])
    cons = np.array([p.functional(g, y.values) for g, _ in p.constraints])
    targets = np.array([xi for _, xi in p.constraints])
    return FunctionalValue(objs, cons, cons - targets)


def gateaux(p, functional_index, y, eta):
    """First variation of objective functional_index (0-based) at y along eta."""
    p.check_function(y)
    p.check_function(eta)
    if not 0 <= functional_index < p.num_objectives:
        raise DomainError(f"objective index {functional_index} out of range")
    return p.first_variation(p.objectives[functional_index], y.values, eta.values)


def constraint_gateaux(p, constraint_index, y, eta):
    """First variation of constraint functional constraint_index at y along eta."""
    p.check_function(y)
    p.check_function(eta)
    if not 0 <= constraint_index < p.num_constraints:
        raise DomainError(f"constraint index {constraint_index} out of range")
    g, _ = p.constraints[constraint_index]
    return p.first_variation(g, y.values, eta.values)
