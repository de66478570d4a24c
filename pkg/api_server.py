"""api_server.py
FastAPI surface over the verification controller; payloads match the CLI's --json output.
Run:
    uvicorn api_server:app --host 0.0.0.0 --port 8000 --reload
"""
from __future__ import annotations

import logging
import time
from typing import Optional, Union

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from config import settings
from controllers.verification_controller import VerificationController
from models.errors import (
    AffgebraError,
    AffinityError,
    CompletionError,
    IdempotencyError,
    MatrixParseError,
    MembershipError,
    VerificationError,
)
from models.exactfield import field_by_name
from models.exactmatrix import ExactMatrix, matrix_from_json
from models.reports import (
    AxiomsRunReport,
    BracketReport,
    ChevalleyReport,
    CompletionReport,
    LineIsoReport,
    MembershipReport,
    ReductionReport,
    TableReport,
)
from utils.io_helpers import load_matrix_arg

logger = logging.getLogger(__name__)

app = FastAPI(title="Affgebra Verification API")

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


@app.middleware("http")
async def add_process_time_header(request: Request, call_next):
    start_time = time.time()
    response = await call_next(request)
    process_time = time.time() - start_time
    response.headers["X-Process-Time"] = str(process_time)
    logger.info("[PERF] %s %s - %s - %.3fs", request.method, request.url, response.status_code, process_time)
    return response


# errors about the mathematics of valid input; everything else is a bad request body
_DOMAIN_ERRORS = (MembershipError, AffinityError, IdempotencyError, CompletionError, VerificationError)


@app.exception_handler(AffgebraError)
async def affgebra_error_handler(request: Request, exc: AffgebraError):
    status = 400 if isinstance(exc, _DOMAIN_ERRORS) else 422
    body = {"error": type(exc).__name__, "detail": str(exc)}
    if isinstance(exc, MembershipError):
        body["constraint"] = exc.constraint
    return JSONResponse(status_code=status, content=body)


@app.exception_handler(ValueError)
async def value_error_handler(request: Request, exc: ValueError):
    return JSONResponse(status_code=422, content={"error": "ValueError", "detail": str(exc)})


# ---------------------------------------------------------------------------
# Request models
# ---------------------------------------------------------------------------

MatrixPayload = Union[str, list[list[str]]]


class MatrixRequest(BaseModel):
    n: Optional[int] = Field(default=None, ge=1)
    field: str = settings.FIELD


class MemberRequest(MatrixRequest):
    matrix: MatrixPayload


class CompleteRequest(MatrixRequest):
    pattern: list[str] = Field(default_factory=list)


class BracketRequest(MatrixRequest):
    a: MatrixPayload
    b: MatrixPayload


class ReduceRequest(MatrixRequest):
    o: MatrixPayload
    a: MatrixPayload
    b: MatrixPayload


class LineIsoRequest(BaseModel):
    zeta1: str
    zeta2: str
    lam: str
    mu: str


class AxiomsRequest(MatrixRequest):
    seed: int = Field(default=settings.SEED, ge=0)
    samples: int = Field(default=settings.SAMPLES, ge=1)
    bound: int = Field(default=settings.BOUND, ge=1)
    suite: str = "all"
    mutate: bool = False


def _matrix(payload: MatrixPayload) -> ExactMatrix:
    if isinstance(payload, list):
        return matrix_from_json(payload)
    if payload.strip().startswith("@"):
        raise MatrixParseError("file references are only accepted on the command line")
    return load_matrix_arg(payload)


def _controller(req: MatrixRequest, *matrices: ExactMatrix, **kwargs) -> VerificationController:
    n = req.n if req.n is not None else (max(1, matrices[0].rows - 1) if matrices else 2)
    return VerificationController(n=n, field=req.field, **kwargs)


# ---------------------------------------------------------------------------
# Endpoints
# ---------------------------------------------------------------------------

@app.post("/api/member", response_model=MembershipReport)
def member_endpoint(req: MemberRequest):
    m = _matrix(req.matrix)
    return _controller(req, m).member(m)


@app.post("/api/complete", response_model=CompletionReport)
def complete_endpoint(req: CompleteRequest):
    field = field_by_name(req.field)
    _, report = _controller(req).complete([field.parse(x) for x in req.pattern])
    return report


@app.post("/api/bracket", response_model=BracketReport)
def bracket_endpoint(req: BracketRequest):
    a, b = _matrix(req.a), _matrix(req.b)
    _, report = _controller(req, a, b).bracket(a, b)
    return report


@app.post("/api/reduce", response_model=ReductionReport)
def reduce_endpoint(req: ReduceRequest):
    o, a, b = _matrix(req.o), _matrix(req.a), _matrix(req.b)
    return _controller(req, o, a, b).reduce(o, a, b)


@app.post("/api/line_iso", response_model=LineIsoReport)
def line_iso_endpoint(req: LineIsoRequest):
    return VerificationController().line_iso(req.zeta1, req.zeta2, req.lam, req.mu)


@app.post("/api/axioms", response_model=AxiomsRunReport)
def axioms_endpoint(req: AxiomsRequest):
    controller = _controller(req, seed=req.seed, samples=req.samples, bound=req.bound)
    return controller.axioms(req.suite, req.mutate)


@app.get("/api/table", response_model=TableReport)
def table_endpoint():
    return VerificationController(n=2).table()


@app.get("/api/chevalley", response_model=ChevalleyReport)
def chevalley_endpoint():
    return VerificationController(n=2, field="qw").chevalley()


@app.get("/")
def root():
    return {"message": "Affgebra Verification API", "commands": ["member", "complete", "bracket", "table",
                                                                  "reduce", "chevalley", "axioms", "line_iso"]}
