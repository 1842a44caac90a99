"""Variational problems and Pareto fronts on time scales."""

from .calculus import GridFunction, c1rd_norm, delta_derivative, delta_integral, sigma_shift
from .errors import (
    DegenerateScaleError,
    DimensionMismatchError,
    DomainError,
    EvalError,
    ExprSyntaxError,
    FileFormatError,
    GridMismatchError,
    LatticeError,
    TsvarError,
)
from .expressions import diff, evaluate as eval_expr, parse, to_string
from .pareto import (
    NCReport,
    ParetoEntry,
    ParetoFront,
    dominance_filter,
    nc_crosscheck,
    simplex_weights,
    weighted_sweep,
)
from .problems import FunctionalValue, VariationalProblem, constraint_gateaux, evaluate, gateaux
from .solver import (
    BruteForceResult,
    ELReport,
    ScalarObjective,
    SolveResult,
    SolveStatus,
    SolverOptions,
    brute_force_oracle,
    el_residual,
    regularity_probe,
    solve_scalar,
)
from .timescales import GridTimeScale, PointClass, TimeScale, parse_literal

__version__ = "0.1.0"
