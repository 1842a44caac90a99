"""Problem and solution file formats.

Problem files are line-oriented sectioned text::

    # comments start with '#'; blank lines are ignored
    [timescale]
    set = [0,1];2          # points `p` and intervals `[l,r]`, ';'-separated
    resolution = 0.5       # required when any interval has l < r

    [dimension]
    n = 1

    [objectives]           # one expression per line, ordered
    y1^2
    (y1-2)^2

    [constraints]          # optional: expression = target
    y1 = 0.1666666666666667

    [boundary]
    alpha = 0              # comma-separated, n values each
    beta = 0

    [solver]               # optional overrides
    grad_tol = 1e-8

Solution files are comma-separated tables with header ``t,y1,...,yn`` and
one row per grid point.  All tabular output uses '.' decimals, LF line
endings, and repr-shortest floats so identical inputs give identical bytes.
"""

from dataclasses import dataclass, field

import numpy as np

from . import expressions as ex
from .calculus import GridFunction
from .errors import ExprSyntaxError, FileFormatError, GridMismatchError
from .problems import VariationalProblem
from .solver import SolverOptions
from .timescales import TimeScale, parse_literal

_SOLVER_KEYS = {
    "grad_tol": float,
    "constraint_tol": float,
    "det_tol": float,
    "max_inner": int,
    "max_outer": int,
    "penalty_init": float,
    "multistart": int,
    "seed": int,
}


@dataclass
class ProblemSpec:
    """Parsed problem file, not yet sampled into a grid."""

    timescale: TimeScale
    resolution: float | None
    n: int
    objective_texts: list
    constraint_texts: list  # (expr text, target)
    alpha: np.ndarray
    beta: np.ndarray
    solver_overrides: dict = field(default_factory=dict)

    def build(self, resolution=None):
        """Sample the grid and construct the VariationalProblem."""
        res = resolution if resolution is not None else self.resolution
        if res is None:
            if not self.timescale.is_discrete:
                raise FileFormatError(
                    "resolution is required for scales with intervals",
                    section="timescale",
                )
            res = 1.0
        grid = self.timescale.sample(res)
        objectives = [ex.parse(s, self.n) for s in self.objective_texts]
        constraints = [(ex.parse(s, self.n), xi) for s, xi in self.constraint_texts]
        return VariationalProblem(
            grid, self.n, objectives, constraints,
            alpha=self.alpha, beta=self.beta, timescale=self.timescale,
        )

    def solver_options(self, base=None):
        opts = base or SolverOptions()
        if self.solver_overrides:
            opts = opts.replace(**self.solver_overrides)
        return opts


def _split_sections(text):
    sections = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise FileFormatError("unterminated section header", line=lineno)
            name = line[1:-1].strip().lower()
            if name in sections:
                raise FileFormatError(f"duplicate section [{name}]", line=lineno)
            sections[name] = []
            current = name
        else:
            if current is None:
                raise FileFormatError(
                    f"content before any section: {line!r}", line=lineno
                )
            sections[current].append((lineno, line))
    return sections


def _keyvals(lines, section):
    out = {}
    for lineno, line in lines:
        if "=" not in line:
            raise FileFormatError(
                f"expected key = value, got {line!r}", section=section, line=lineno
            )
        key, val = line.split("=", 1)
        key = key.strip().lower()
        if key in out:
            raise FileFormatError(f"duplicate key {key!r}", section=section, line=lineno)
        out[key] = (lineno, val.strip())
    return out


def _number(text, section, lineno, cast=float):
    try:
        return cast(text)
    except ValueError:
        raise FileFormatError(
            f"bad number {text!r}", section=section, line=lineno
        ) from None


def _vector(text, n, section, lineno):
    parts = [s.strip() for s in text.split(",")]
    vals = [_number(s, section, lineno) for s in parts]
    if len(vals) != n:
        raise FileFormatError(
            f"expected {n} comma-separated values, got {len(vals)}",
            section=section, line=lineno,
        )
    return np.array(vals)


def parse_problem(text):
    """Parse problem-file text into a ProblemSpec."""
    sections = _split_sections(text)
    for required in ("timescale", "dimension", "objectives", "boundary"):
        if required not in sections:
            raise FileFormatError(f"missing section [{required}]", section=required)
    unknown = set(sections) - {"timescale", "dimension", "objectives",
                               "constraints", "boundary", "solver"}
    if unknown:
        raise FileFormatError(f"unknown sections: {sorted(unknown)}")

    tsk = _keyvals(sections["timescale"], "timescale")
    if "set" not in tsk:
        raise FileFormatError("missing 'set' key", section="timescale")
    lineno, literal = tsk["set"]
    try:
        ts = parse_literal(literal)
    except FileFormatError as e:
        raise FileFormatError(str(e), section="timescale", line=lineno) from None
    resolution = None
    if "resolution" in tsk:
        lineno, val = tsk["resolution"]
        resolution = _number(val, "timescale", lineno)
        if resolution <= 0:
            raise FileFormatError("resolution must be positive",
                                  section="timescale", line=lineno)
    extra = set(tsk) - {"set", "resolution"}
    if extra:
        raise FileFormatError(f"unknown keys {sorted(extra)}", section="timescale")

    dim = _keyvals(sections["dimension"], "dimension")
    if "n" not in dim:
        raise FileFormatError("missing 'n' key", section="dimension")
    lineno, val = dim["n"]
    n = _number(val, "dimension", lineno, int)
    if n < 1:
        raise FileFormatError("n must be >= 1", section="dimension", line=lineno)

    objective_texts = []
    for lineno, line in sections["objectives"]:
        _check_expr(line, n, "objectives", lineno)
        objective_texts.append(line)
    if not objective_texts:
        raise FileFormatError("at least one objective is required",
                              section="objectives")

    constraint_texts = []
    for lineno, line in sections.get("constraints", []):
        if "=" not in line:
            raise FileFormatError(
                "expected 'expression = target'", section="constraints", line=lineno
            )
        expr_text, target = line.rsplit("=", 1)
        expr_text = expr_text.strip()
        _check_expr(expr_text, n, "constraints", lineno)
        constraint_texts.append(
            (expr_text, _number(target.strip(), "constraints", lineno))
        )

    bnd = _keyvals(sections["boundary"], "boundary")
    for key in ("alpha", "beta"):
        if key not in bnd:
            raise FileFormatError(f"missing '{key}' key", section="boundary")
    alpha = _vector(bnd["alpha"][1], n, "boundary", bnd["alpha"][0])
    beta = _vector(bnd["beta"][1], n, "boundary", bnd["beta"][0])

    overrides = {}
    for key, (lineno, val) in _keyvals(sections.get("solver", []), "solver").items():
        if key not in _SOLVER_KEYS:
            raise FileFormatError(f"unknown solver option {key!r}",
                                  section="solver", line=lineno)
        overrides[key] = _number(val, "solver", lineno, _SOLVER_KEYS[key])

    return ProblemSpec(
        timescale=ts, resolution=resolution, n=n,
        objective_texts=objective_texts, constraint_texts=constraint_texts,
        alpha=alpha, beta=beta, solver_overrides=overrides,
    )


def _check_expr(text, n, section, lineno):
    try:
        ex.parse(text, n)
    except ExprSyntaxError as e:
        raise FileFormatError(
            f"bad expression {text!r}: {e}", section=section, line=lineno
        ) from None


# -- tabular formatting -------------------------------------------------------

def fmt_float(x):
    """Shortest round-trip decimal form; deterministic."""
    return repr(float(x))


def solution_table(grid_or_t, values):
    """Solution file content: header t,y1,...,yn then one row per point."""
    t = getattr(grid_or_t, "points", grid_or_t)
    values = np.asarray(values, dtype=float)
    if values.ndim == 1:
        values = values[:, None]
    header = "t," + ",".join(f"y{k + 1}" for k in range(values.shape[1]))
    lines = [header]
    for ti, row in zip(np.asarray(t, dtype=float), values):
        lines.append(",".join([fmt_float(ti)] + [fmt_float(v) for v in row]))
    return "\n".join(lines) + "\n"


def parse_solution(text):
    """Parse a solution table; returns (t array, values array)."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise FileFormatError("empty solution file")
    header = [h.strip().lower() for h in lines[0].split(",")]
    if header[0] != "t" or len(header) < 2:
        raise FileFormatError("solution header must be t,y1,...,yn", line=1)
    for k, name in enumerate(header[1:], start=1):
        if name != f"y{k}":
            raise FileFormatError(
                f"unexpected column {name!r}, wanted y{k}", line=1
            )
    n = len(header) - 1
    ts, rows = [], []
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split(",")
        if len(parts) != n + 1:
            raise FileFormatError(
                f"expected {n + 1} columns, got {len(parts)}", line=lineno
            )
        vals = [_number(s.strip(), None, lineno) for s in parts]
        ts.append(vals[0])
        rows.append(vals[1:])
    return np.array(ts), np.array(rows)


def solution_to_gridfunction(p, t, values, tol=1e-9):
    """Validate file samples against the problem grid and wrap them."""
    values = np.asarray(values, dtype=float)
    if values.ndim == 1:
        values = values[:, None]
    if values.shape[1] != p.n:
        raise GridMismatchError(
            f"solution has {values.shape[1]} components, problem needs {p.n}"
        )
    if t.size != p.grid.size or np.max(np.abs(t - p.grid.points)) > tol:
        raise GridMismatchError("solution grid does not match the problem grid")
    return GridFunction(p.grid, values)


def front_table(gammas, objective_rows, paths):
    """Front file content: gamma columns, objective columns, solution path."""
    gammas = [np.asarray(g, dtype=float) for g in gammas]
    objective_rows = [np.asarray(o, dtype=float) for o in objective_rows]
    if not gammas:
        return "gamma_1,objective_1,solution\n"
    d = gammas[0].size
    header = (
        ",".join(f"gamma_{i + 1}" for i in range(d))
        + ","
        + ",".join(f"objective_{i + 1}" for i in range(d))
        + ",solution"
    )
    lines = [header]
    for g, o, path in zip(gammas, objective_rows, paths):
        cells = [fmt_float(x) for x in g] + [fmt_float(x) for x in o] + [str(path)]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def residual_table(t, residuals):
    """Euler-Lagrange residual as tabular text: index, t, components."""
    t = np.asarray(t, dtype=float)
    residuals = np.asarray(residuals, dtype=float)
    if residuals.ndim == 1:
        residuals = residuals[:, None]
    ncomp = residuals.shape[1] if residuals.size else 1
    header = "index,t," + ",".join(f"r{k + 1}" for k in range(ncomp))
    lines = [header]
    for i, (ti, row) in enumerate(zip(t, residuals)):
        lines.append(",".join([str(i), fmt_float(ti)] + [fmt_float(r) for r in row]))
    return "\n".join(lines) + "\n"
