"""HTTP front end: a thin FastAPI wrapper over the service layer.

Each endpoint accepts the same inputs as the corresponding CLI subcommand
(matrices inline instead of in files) and returns the shared report
payload.  Parse and usage problems map to 400, solver failures stay 200
with an ``inconclusive`` verdict.
"""

from __future__ import annotations

from typing import Dict, List, Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import __version__
from . import service
from .errors import ParseError
from .ratsol import DEFAULT_MAX_DEGREE

app = FastAPI(title="hypertrans", version=__version__)


class MatrixPayload(BaseModel):
    rows: int
    cols: int
    entries: List[List[str]]


class RatsolRequest(BaseModel):
    op: Optional[str] = None
    rhs: Optional[str] = None
    matrix: Optional[MatrixPayload] = None
    seed: int = 0
    max_degree: int = DEFAULT_MAX_DEGREE


class IsomonoRequest(BaseModel):
    op: Optional[str] = None
    matrix: Optional[MatrixPayload] = None
    seed: int = 0
    max_degree: int = DEFAULT_MAX_DEGREE


class CriterionRequest(BaseModel):
    op: str
    rhs: str
    assume_irreducible: bool = False
    assume_quasi_simple: bool = False
    seed: int = 0
    max_degree: int = DEFAULT_MAX_DEGREE


class ConstructRequest(BaseModel):
    kind: str
    op: Optional[str] = None
    rhs: Optional[str] = None
    matrices: List[MatrixPayload] = Field(default_factory=list)


class DecomposeRequest(BaseModel):
    op: Optional[str] = None
    matrices: List[MatrixPayload] = Field(default_factory=list)
    seed: int = 0
    max_degree: int = DEFAULT_MAX_DEGREE


class Report(BaseModel):
    verdict: str
    integrability: Optional[Dict] = None
    inhomogeneous: Optional[Dict] = None
    group: Optional[str] = None
    assumptions: List[str] = Field(default_factory=list)
    caveats: List[str] = Field(default_factory=list)
    diagnostics: Dict = Field(default_factory=dict)
    version: str
    hypertranscendent: Optional[bool] = None


def _matrix(m: Optional[MatrixPayload]):
    return service.matrix_from_json(m.model_dump()) if m is not None else None


def _guard(fn, *args, **kwargs) -> Report:
    try:
        report, _code = fn(*args, **kwargs)
    except (service.UsageError, ParseError) as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    return Report(**report)


@app.get("/version")
def version() -> Dict[str, str]:
    return {"version": __version__}


@app.post("/ratsol", response_model=Report, response_model_exclude_none=False)
def ratsol(req: RatsolRequest) -> Report:
    return _guard(service.run_ratsol, op_text=req.op, rhs_text=req.rhs,
                  matrix=_matrix(req.matrix), seed=req.seed,
                  max_degree=req.max_degree)


@app.post("/isomono", response_model=Report)
def isomono(req: IsomonoRequest) -> Report:
    return _guard(service.run_isomono, op_text=req.op,
                  matrix=_matrix(req.matrix), seed=req.seed,
                  max_degree=req.max_degree)


@app.post("/criterion", response_model=Report)
def criterion(req: CriterionRequest) -> Report:
    return _guard(service.run_criterion, op_text=req.op, rhs_text=req.rhs,
                  assume_irreducible=req.assume_irreducible,
                  assume_quasi_simple=req.assume_quasi_simple,
                  seed=req.seed, max_degree=req.max_degree)


@app.post("/construct", response_model=Report)
def construct(req: ConstructRequest) -> Report:
    return _guard(service.run_construct, req.kind, op_text=req.op,
                  rhs_text=req.rhs,
                  matrices=[_matrix(m) for m in req.matrices])


@app.post("/decompose", response_model=Report)
def decompose(req: DecomposeRequest) -> Report:
    return _guard(service.run_decompose, op_text=req.op,
                  matrices=[_matrix(m) for m in req.matrices],
                  seed=req.seed, max_degree=req.max_degree)
