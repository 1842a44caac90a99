"""Weakly Pareto-optimal fronts by weighted-sum sweeps.

A sweep enumerates the strictly positive uniform simplex grid of weights,
solves the scalarized problem per weight (warm-started along the sweep),
drops dominated or duplicate objective vectors, and can cross-validate an
entry by re-minimizing each objective with the others pinned as
isoperimetric constraints (the necessity check).
"""

from dataclasses import dataclass, field

import numpy as np

from .calculus import GridFunction
from .errors import DomainError
from .problems import VariationalProblem, evaluate
from .solver import ScalarObjective, SolveStatus, SolverOptions, solve_scalar

#: strictness tolerance in the dominance comparison
DOM_TOL = 1e-9


@dataclass
class ParetoEntry:
    gamma: np.ndarray
    y: GridFunction
    objectives: np.ndarray
    diagnostics: dict = field(default_factory=dict)


@dataclass
class ParetoFront:
    entries: list
    dominated_removed: int
    failures: list = field(default_factory=list)

    @property
    def objective_matrix(self):
        return np.array([e.objectives for e in self.entries])


@dataclass
class NCReport:
    """Outcome of the constrained-scalar necessity check for one objective."""

    objective_index: int
    improvement: float
    verdict: str  # "consistent" | "refuted" | "inconclusive"
    resolved_objective: float
    status: SolveStatus
    constraint_violation: float


def simplex_weights(d, k):
    """Interior points of the uniform simplex grid with spacing 1/k:
    all weight vectors (c_1/k, ..., c_d/k) with integer c_i >= 1 summing
    to k, in lexicographic order."""
    if d < 1:
        raise DomainError("dimension must be >= 1")
    if k < d:
        return []
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(prefix + [remaining])
            return
        for c in range(1, remaining - slots + 2):
            rec(prefix + [c], remaining - c, slots - 1)

    rec([], k, d)
    return [np.array(c, dtype=float) / k for c in out]


def dominates(u, w, dom_tol=DOM_TOL):
    """True when u is <= w everywhere and strictly better somewhere."""
    u = np.asarray(u, dtype=float)
    w = np.asarray(w, dtype=float)
    return bool(np.all(u <= w + dom_tol) and np.any(u < w - dom_tol))


def dominance_filter(points, dom_tol=DOM_TOL):
    """Indices of the points not weakly dominated by any other point,
    in stable order."""
    pts = [np.asarray(pt, dtype=float) for pt in points]
    survivors = []
    for i, pi in enumerate(pts):
        if not any(i != j and dominates(pj, pi, dom_tol)
                   for j, pj in enumerate(pts)):
            survivors.append(i)
    return survivors


def weighted_sweep(p, k, options=None, warm_start=True, dom_tol=DOM_TOL):
    """Sweep the weight simplex and assemble the non-dominated front.

    Entries are sorted lexicographically by objective vector; failed
    solves are dropped and recorded.  Warm starting reuses the previous
    weight's solution as the next initial guess, in deterministic order.
    """
    if p.num_objectives < 2:
        raise DomainError("a Pareto sweep needs at least 2 objectives")
    if k < 2:
        raise DomainError("weight grid needs k >= 2")
    options = options or SolverOptions()

    raw = []
    failures = []
    prev = None
    for gamma in simplex_weights(p.num_objectives, k):
        res = solve_scalar(p, ScalarObjective(weights=gamma),
                           init=prev, options=options)
        if res.status is SolveStatus.CONVERGED:
            fv = evaluate(p, res.y)
            raw.append(ParetoEntry(
                gamma=gamma,
                y=res.y,
                objectives=fv.objectives,
                diagnostics={
                    "status": res.status.value,
                    "iterations": res.iterations,
                    "grad_norm": res.grad_norm,
                    "objective": res.objective,
                },
            ))
            if warm_start:
                prev = res.y
        else:
            failures.append({
                "gamma": gamma.tolist(),
                "status": res.status.value,
                "iterations": res.iterations,
                "grad_norm": res.grad_norm,
            })

    # drop duplicates (objective vectors equal within tolerance), keep first
    kept = []
    for e in raw:
        if any(np.all(np.abs(e.objectives - f.objectives) <= dom_tol)
               for f in kept):
            continue
        kept.append(e)
    survivors = dominance_filter([e.objectives for e in kept], dom_tol)
    entries = [kept[i] for i in survivors]
    removed = len(raw) - len(entries)
    entries.sort(key=lambda e: tuple(e.objectives))
    return ParetoFront(entries=entries, dominated_removed=removed,
                       failures=failures)


def nc_crosscheck(p, entry, objective_index, options=None, nc_tol=1e-6):
    """Necessity check: re-minimize objective objective_index subject to
    the other objectives pinned at the entry's values (plus the problem's
    own constraints), starting from the entry's trajectory.

    A genuine weakly Pareto-optimal entry admits no improvement beyond
    nc_tol; a failed re-solve is inconclusive rather than a refutation.
    """
    d = p.num_objectives
    if d < 2:
        raise DomainError("necessity check needs at least 2 objectives")
    if not 0 <= objective_index < d:
        raise DomainError(f"objective index {objective_index} out of range")
    options = options or SolverOptions()

    pinned = [(p.objectives[j], float(entry.objectives[j]))
              for j in range(d) if j != objective_index]
    sub = VariationalProblem(
        p.grid, p.n, p.objectives,
        constraints=tuple(p.constraints) + tuple(pinned),
        alpha=p.alpha, beta=p.beta, timescale=p.timescale,
    )
    res = solve_scalar(sub, ScalarObjective(objective_index=objective_index),
                       init=entry.y, options=options)
    viol = float(np.max(np.abs(res.constraint_violations))) \
        if res.constraint_violations.size else 0.0
    if res.status is not SolveStatus.CONVERGED:
        return NCReport(objective_index, 0.0, "inconclusive",
                        res.objective, res.status, viol)
    improvement = float(entry.objectives[objective_index] - res.objective)
    verdict = "consistent" if improvement <= nc_tol else "refuted"
    return NCReport(objective_index, improvement, verdict,
                    res.objective, res.status, viol)
