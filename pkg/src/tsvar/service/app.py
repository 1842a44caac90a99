"""FastAPI application exposing eval/solve/pareto/check."""

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import (
    DimensionMismatchError,
    GridMismatchError,
    TsvarError,
)
from . import handlers, schemas

_SHAPE_ERRORS = (GridMismatchError, DimensionMismatchError)


def create_app() -> FastAPI:
    app = FastAPI(
        title="tsvar solver service",
        description="Variational problems and Pareto fronts on time scales",
        version=__version__,
    )

    @app.exception_handler(TsvarError)
    async def tsvar_error_handler(request: Request, exc: TsvarError):
        if isinstance(exc, _SHAPE_ERRORS):
            status, code = 409, "shape_mismatch"
        else:
            status, code = 422, "input_error"
        body = schemas.ErrorBody(code=code, message=str(exc))
        return JSONResponse(status_code=status, content=body.model_dump())

    @app.get("/api/health", response_model=schemas.HealthResponse)
    def health():
        return schemas.HealthResponse(status="ok", version=__version__)

    @app.post("/api/eval", response_model=schemas.EvalResponse)
    def eval_endpoint(req: schemas.EvalRequest):
        return handlers.run_eval(req)

    @app.post("/api/solve", response_model=schemas.SolveResponse)
    def solve_endpoint(req: schemas.SolveRequest):
        return handlers.run_solve(req)

    @app.post("/api/pareto", response_model=schemas.ParetoResponse)
    def pareto_endpoint(req: schemas.ParetoRequest):
        return handlers.run_pareto(req)

    @app.post("/api/check", response_model=schemas.CheckResponse)
    def check_endpoint(req: schemas.CheckRequest):
        return handlers.run_check(req)

    return app


app = create_app()
