"""Command-line front end.

By default commands run in-process against the same code the service
exposes; with --server they become a thin HTTP client of a running
service.  Exit codes: 0 success, 2 input error, 3 shape mismatch,
4 solver failure, 5 check failure.
"""

import json
import sys
from pathlib import Path

import click
import numpy as np

from . import files
from .errors import DimensionMismatchError, GridMismatchError, TsvarError
from .service import handlers, schemas

EXIT_INPUT = 2
EXIT_SHAPE = 3
EXIT_SOLVER = 4
EXIT_CHECK = 5

_LOCAL_ROUTES = {
    "/api/eval": (handlers.run_eval, schemas.EvalResponse),
    "/api/solve": (handlers.run_solve, schemas.SolveResponse),
    "/api/pareto": (handlers.run_pareto, schemas.ParetoResponse),
    "/api/check": (handlers.run_check, schemas.CheckResponse),
}


class ServiceClient:
    """Dispatches requests locally or to a remote service."""

    def __init__(self, server=None, http=None):
        self.server = server
        self._http = http

    def call(self, path, request):
        fn, resp_model = _LOCAL_ROUTES[path]
        if self.server is None and self._http is None:
            return fn(request)
        import httpx
        if self._http is None:
            self._http = httpx.Client(base_url=self.server, timeout=600.0)
        try:
            r = self._http.post(path, json=request.model_dump())
            if r.status_code in (409, 422):
                body = r.json()
                code = body.get("code", "input_error")
                message = body.get("message", str(body.get("detail", body)))
                if code == "shape_mismatch":
                    raise GridMismatchError(message)
                raise TsvarError(message)
            r.raise_for_status()
        except httpx.HTTPError as e:
            raise TsvarError(f"service request failed: {e}") from e
        return resp_model.model_validate(r.json())


def _fail(code, message):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _guard(client, path, request):
    try:
        return client.call(path, request)
    except (GridMismatchError, DimensionMismatchError) as e:
        _fail(EXIT_SHAPE, e)
    except TsvarError as e:
        _fail(EXIT_INPUT, e)


def _parse_floats(text, what):
    try:
        return [float(s) for s in text.split(",")]
    except ValueError:
        _fail(EXIT_INPUT, f"bad {what} {text!r}: expected comma-separated numbers")


def _read(path):
    try:
        return Path(path).read_text()
    except OSError as e:
        _fail(EXIT_INPUT, f"cannot read {path}: {e}")


def _write(path, content):
    Path(path).write_text(content, newline="\n")


def _overrides(seed, multistart, tol_grad, tol_con):
    return schemas.SolverOverrides(
        seed=seed, multistart=multistart, grad_tol=tol_grad, constraint_tol=tol_con
    )


def _solution_text(payload):
    return files.solution_table(np.asarray(payload.t), np.asarray(payload.values))


@click.group()
@click.option("--server", default=None,
              help="Base URL of a running service; default is in-process.")
@click.pass_context
def main(ctx, server):
    """Solve and verify variational problems on time scales."""
    ctx.obj = ServiceClient(server=server)


@main.command("eval")
@click.argument("problem", type=click.Path())
@click.argument("solution", type=click.Path())
@click.option("--resolution", type=float, default=None,
              help="Override the problem file's sampling resolution.")
@click.pass_obj
def eval_cmd(client, problem, solution, resolution):
    """Evaluate objectives and constraints of a solution file."""
    req = schemas.EvalRequest(problem=_read(problem), solution=_read(solution),
                              resolution=resolution)
    resp = _guard(client, "/api/eval", req)
    lines = ["name,value,target,violation"]
    for i, v in enumerate(resp.objectives):
        lines.append(f"objective_{i + 1},{files.fmt_float(v)},,")
    for i, c in enumerate(resp.constraints):
        lines.append(
            f"constraint_{i + 1},{files.fmt_float(c.value)},"
            f"{files.fmt_float(c.target)},{files.fmt_float(c.violation)}"
        )
    click.echo("\n".join(lines))


@main.command("solve")
@click.argument("problem", type=click.Path())
@click.option("--weights", default=None, help="Comma-separated positive weights summing to 1.")
@click.option("--objective", type=int, default=None, help="1-based objective index.")
@click.option("--out", default="solution.csv", show_default=True,
              help="Solution file to write.")
@click.option("--report", "report_path", default=None,
              help="Report JSON path (default: <out>.report.json).")
@click.option("--resolution", type=float, default=None)
@click.option("--seed", type=int, default=None)
@click.option("--multistart", type=int, default=None)
@click.option("--tol-grad", type=float, default=None)
@click.option("--tol-con", type=float, default=None)
@click.pass_obj
def solve_cmd(client, problem, weights, objective, out, report_path, resolution,
              seed, multistart, tol_grad, tol_con):
    """Minimize a scalarization; write the solution and a report."""
    w = _parse_floats(weights, "weights") if weights is not None else None
    req = schemas.SolveRequest(
        problem=_read(problem), weights=w, objective_index=objective,
        resolution=resolution,
        overrides=_overrides(seed, multistart, tol_grad, tol_con),
    )
    resp = _guard(client, "/api/solve", req)
    _write(out, _solution_text(resp.solution))
    if report_path is None:
        report_path = f"{out}.report.json"
    report = resp.model_dump(exclude={"solution"})
    _write(report_path, json.dumps(report, indent=2, sort_keys=True) + "\n")

    lines = ["key,value", f"status,{resp.status}",
             f"objective,{files.fmt_float(resp.objective)}"]
    for i, v in enumerate(resp.objective_vector):
        lines.append(f"objective_{i + 1},{files.fmt_float(v)}")
    for i, v in enumerate(resp.multipliers):
        lines.append(f"multiplier_{i + 1},{files.fmt_float(v)}")
    lines += [
        f"gradient_norm,{files.fmt_float(resp.grad_norm)}",
        f"iterations,{resp.iterations}",
        f"el_residual_max,{files.fmt_float(resp.el_residual_max)}",
        f"dr_spread,{files.fmt_float(resp.dr_spread)}",
        f"solution,{out}",
        f"report,{report_path}",
    ]
    click.echo("\n".join(lines))
    if not resp.converged:
        sys.exit(EXIT_SOLVER)


@main.command("pareto")
@click.argument("problem", type=click.Path())
@click.option("--grid", "k", type=int, required=True,
              help="Points per weight axis of the simplex sweep.")
@click.option("--out", "out_dir", default="front", show_default=True,
              help="Directory for front table, diagnostics, and solutions.")
@click.option("--resolution", type=float, default=None)
@click.option("--seed", type=int, default=None)
@click.option("--no-warm-start", is_flag=True, default=False,
              help="Solve each weight from the default start instead of the previous solution.")
@click.option("--tol-grad", type=float, default=None)
@click.option("--tol-con", type=float, default=None)
@click.pass_obj
def pareto_cmd(client, problem, k, out_dir, resolution, seed, no_warm_start,
               tol_grad, tol_con):
    """Sweep the weight simplex and write the non-dominated front."""
    req = schemas.ParetoRequest(
        problem=_read(problem), k=k, resolution=resolution,
        warm_start=not no_warm_start,
        overrides=_overrides(seed, None, tol_grad, tol_con),
    )
    resp = _guard(client, "/api/pareto", req)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    names = [f"entry_{i + 1:03d}.csv" for i in range(len(resp.entries))]
    for name, entry in zip(names, resp.entries):
        _write(out / name, _solution_text(entry.solution))

    _write(out / "front.csv", files.front_table(
        [e.gamma for e in resp.entries],
        [e.objectives for e in resp.entries],
        names,
    ))
    diag = {
        "k": k,
        "dominated_removed": resp.dominated_removed,
        "entries": [
            {"gamma": e.gamma, "objectives": e.objectives,
             "solution": name, "diagnostics": e.diagnostics}
            for e, name in zip(resp.entries, names)
        ],
        "failures": resp.failures,
    }
    _write(out / "front.json", json.dumps(diag, indent=2, sort_keys=True) + "\n")

    click.echo("key,value")
    click.echo(f"entries,{len(resp.entries)}")
    click.echo(f"dominated_removed,{resp.dominated_removed}")
    click.echo(f"failures,{len(resp.failures)}")
    click.echo(f"front,{out / 'front.csv'}")
    if not resp.entries:
        sys.exit(EXIT_SOLVER)


@main.command("check")
@click.argument("problem", type=click.Path())
@click.argument("solution", type=click.Path())
@click.option("--lambda", "multipliers", default=None,
              help="Comma-separated multipliers; recovered by least squares when omitted.")
@click.option("--weights", default=None,
              help="Scalarization weights for the stationarity checks (default: uniform).")
@click.option("--nc", is_flag=True, default=False,
              help="Run the constrained-scalar necessity check per objective.")
@click.option("--residuals", "residuals_path", default=None,
              help="Write the per-point Euler-Lagrange residual table here.")
@click.option("--resolution", type=float, default=None)
@click.option("--tol-residual", type=float, default=1e-6, show_default=True)
@click.option("--tol-dr", type=float, default=1e-6, show_default=True)
@click.option("--tol-con", type=float, default=1e-8, show_default=True)
@click.option("--tol-nc", type=float, default=1e-6, show_default=True)
@click.pass_obj
def check_cmd(client, problem, solution, multipliers, weights, nc, residuals_path,
              resolution, tol_residual, tol_dr, tol_con, tol_nc):
    """Verify first-order conditions of a solution file."""
    req = schemas.CheckRequest(
        problem=_read(problem), solution=_read(solution),
        multipliers=_parse_floats(multipliers, "multipliers") if multipliers else None,
        weights=_parse_floats(weights, "weights") if weights else None,
        nc=nc, resolution=resolution,
        residual_tol=tol_residual, dr_tol=tol_dr,
        constraint_tol=tol_con, nc_tol=tol_nc,
    )
    resp = _guard(client, "/api/check", req)

    if residuals_path is not None:
        rows = np.asarray(resp.residual_rows) if resp.residual_rows else np.zeros((0, 1))
        _write(residuals_path, files.residual_table(resp.residual_t, rows))

    def flag(name):
        return "no" if name in resp.failed_checks else "yes"

    lines = ["check,value,passed"]
    lines.append(f"el_residual_max,{files.fmt_float(resp.el_residual_max)},{flag('el_residual')}")
    lines.append(f"dr_spread,{files.fmt_float(resp.dr_spread)},{flag('dubois_reymond')}")
    lines.append(f"boundary_error,{files.fmt_float(resp.boundary_error)},{flag('boundary')}")
    if resp.constraint_violations:
        worst = max(abs(v) for v in resp.constraint_violations)
        lines.append(f"constraint_violation_max,{files.fmt_float(worst)},{flag('constraints')}")
        for i, v in enumerate(resp.multipliers_used):
            src = "recovered" if resp.multipliers_recovered else "given"
            lines.append(f"multiplier_{i + 1} ({src}),{files.fmt_float(v)},")
    if resp.nc_reports is not None:
        for r in resp.nc_reports:
            ok = "yes" if r.verdict == "consistent" else "no"
            lines.append(
                f"nc_improvement_{r.objective_index},{files.fmt_float(r.improvement)},{ok}"
            )
    click.echo("\n".join(lines))
    if not resp.passed:
        sys.exit(EXIT_CHECK)


@main.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve_cmd(host, port):
    """Run the HTTP service."""
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
