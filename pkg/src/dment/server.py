"""FastAPI service wrapping the measurement toolkit.

Run with ``uvicorn dment.server:app``.  Domain validation failures map to
HTTP 422 with the offending detail in the body.
"""
from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import api
from .errors import DmentError


def create_app() -> FastAPI:
    app = FastAPI(title="dment", version=api.__version__,
                  description="Tripartite entanglement dynamics under a DM coupling")

    @app.exception_handler(DmentError)
    async def _domain_error(request: Request, exc: DmentError) -> JSONResponse:
        return JSONResponse(status_code=422, content={"detail": str(exc)})

    @app.exception_handler(ValueError)
    async def _value_error(request: Request, exc: ValueError) -> JSONResponse:
        return JSONResponse(status_code=422, content={"detail": str(exc)})

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.get("/version", response_model=api.VersionResponse)
    def version() -> api.VersionResponse:
        return api.version_info()

    @app.post("/measure", response_model=api.MeasureResponse)
    def measure(request: api.MeasureRequest) -> api.MeasureResponse:
        return api.handle_measure(request)

    @app.post("/sweep", response_model=api.SweepResponse)
    def sweep(request: api.SweepRequest) -> api.SweepResponse:
        return api.handle_sweep(request)

    @app.post("/repro", response_model=api.ReproResponse)
    def repro(request: api.ReproRequest) -> api.ReproResponse:
        return api.handle_repro(request)

    return app


app = create_app()
