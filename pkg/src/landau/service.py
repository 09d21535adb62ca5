"""FastAPI service wrapping the radii package.

One POST endpoint per command under /v1, mirroring the CLI one to one;
both go through the same handlers, so payloads are identical.  Domain
errors map to 422, numeric budget/bracket failures to 400.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import __version__, handlers
from .errors import BracketError, BudgetError, DomainError
from .models import (
    AuditEnvelope,
    AuditRequest,
    PlotdataEnvelope,
    PlotdataRequest,
    RadiiEnvelope,
    RadiiRequest,
    SharpnessEnvelope,
    SharpnessRequest,
    SpecfunEnvelope,
    SpecfunRequest,
    TableEnvelope,
    TableRequest,
)

app = FastAPI(
    title="landau radii service",
    version=__version__,
    description=(
        "Sharp univalence and schlicht-disc radii for bounded harmonic "
        "mapping classes, with special-function evaluation, sharpness "
        "witnesses and the identity audit."
    ),
)


@app.exception_handler(DomainError)
async def _domain_error(_: Request, exc: DomainError) -> JSONResponse:
    return JSONResponse(status_code=422, content={"detail": {"kind": "domain", "message": str(exc)}})


@app.exception_handler(BudgetError)
async def _budget_error(_: Request, exc: BudgetError) -> JSONResponse:
    return JSONResponse(status_code=400, content={"detail": {"kind": "budget", "message": str(exc)}})


@app.exception_handler(BracketError)
async def _bracket_error(_: Request, exc: BracketError) -> JSONResponse:
    return JSONResponse(status_code=400, content={"detail": {"kind": "bracket", "message": str(exc)}})


@app.get("/v1/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/v1/radii", response_model=RadiiEnvelope)
def radii(req: RadiiRequest) -> RadiiEnvelope:
    return handlers.handle_radii(req)


@app.post("/v1/table", response_model=TableEnvelope)
def table(req: TableRequest) -> TableEnvelope:
    return handlers.handle_table(req)


@app.post("/v1/sharpness", response_model=SharpnessEnvelope)
def sharpness(req: SharpnessRequest) -> SharpnessEnvelope:
    return handlers.handle_sharpness(req)


@app.post("/v1/plotdata", response_model=PlotdataEnvelope)
def plotdata(req: PlotdataRequest) -> PlotdataEnvelope:
    return handlers.handle_plotdata(req)


@app.post("/v1/specfun", response_model=SpecfunEnvelope)
def specfun(req: SpecfunRequest) -> SpecfunEnvelope:
    return handlers.handle_specfun(req)


@app.post("/v1/audit", response_model=AuditEnvelope)
def audit(req: AuditRequest) -> AuditEnvelope:
    return handlers.handle_audit(req)
