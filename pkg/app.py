"""
Restricted k-SAT toolkit: FastAPI app.

Run: uvicorn app:app --reload
"""

from typing import List, Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from cnf import Formula, dimacs_read, dimacs_write
from config import get_config
from errors import DimacsParseError, KSatError, OracleLimitError
from models import CoreParams, ProcessConfig, SolverConfig, Variant
from oracle import majority_disagreement, summarize_solution_space
from process import generate, solve_complete
from solver import default_t_sweep, solve
from structure import best_report, sweep_t

app = FastAPI(
    title="Restricted k-SAT Toolkit",
    description="Generates satisfiable random k-CNF formulas by the restricted clause process, solves them with the majority-vote solver and analyzes their solution space.",
    version="0.1.0",
)


class GenerateRequest(BaseModel):
    n: int = Field(..., ge=1)
    k: int = Field(3, ge=1)
    variant: Variant = Variant.PERM_M
    m: Optional[int] = Field(None, ge=0)
    ratio: Optional[float] = Field(None, ge=0)
    p: Optional[float] = None
    p1: Optional[float] = None
    p2: Optional[float] = None
    seed: int = Field(0, ge=0)


class FormulaRequest(BaseModel):
    dimacs: str
    t: Optional[int] = Field(None, ge=1)
    t_sweep: Optional[List[int]] = None
    oracle_limit: Optional[int] = Field(None, ge=1)


def _http_error(exc: KSatError) -> HTTPException:
    if isinstance(exc, OracleLimitError):
        return HTTPException(status_code=413, detail=str(exc))
    return HTTPException(status_code=422, detail=str(exc))


def _parse(text: str) -> Formula:
    formula = dimacs_read(text)
    if not isinstance(formula, Formula):
        raise DimacsParseError("clauses must all have the same width")
    return formula


def _sweep(request: FormulaRequest, formula: Formula) -> tuple:
    if request.t_sweep:
        return tuple(request.t_sweep)
    if request.t is not None:
        return (request.t,)
    return default_t_sweep(formula)


@app.get("/")
def root() -> dict:
    """Health / info."""
    return {
        "name": "Restricted k-SAT Toolkit",
        "docs": "/docs",
        "generate": "POST /generate",
        "solve": "POST /solve",
        "analyze": "POST /analyze",
    }


@app.post("/generate")
def generate_formula(request: GenerateRequest) -> dict:
    """Run a clause process; returns DIMACS text and acceptance counts."""
    m = request.m
    if m is None and request.ratio is not None:
        m = int(round(request.ratio * request.n))
    try:
        config = ProcessConfig(
            n=request.n, k=request.k, variant=request.variant, m=m,
            p=request.p, p1=request.p1, p2=request.p2, seed=request.seed,
        )
        formula, trace = generate(config)
    except KSatError as exc:
        raise _http_error(exc) from None
    return {
        "config": config.to_dict(),
        "dimacs": dimacs_write(formula),
        "counts": trace.counts() if trace is not None else None,
    }


@app.post("/solve")
def solve_formula(request: FormulaRequest) -> dict:
    """Run the majority-vote solver; failures come back as a typed failure reason, not an error."""
    try:
        formula = _parse(request.dimacs)
        sweep = _sweep(request, formula)
        outcome = solve(formula, SolverConfig(t=sweep[0], t_sweep=sweep))
    except KSatError as exc:
        raise _http_error(exc) from None
    return outcome.to_dict()


@app.post("/analyze")
def analyze_formula(request: FormulaRequest) -> dict:
    """Oracle summary, MAJ disagreement and the best core report over the t sweep."""
    try:
        formula = _parse(request.dimacs)
        summary = summarize_solution_space(formula, limit=request.oracle_limit)
        psi = solve_complete(formula, get_config().generator.checker_backend)
        out = {
            "oracle": summary.to_dict(),
            "maj_disagreement": majority_disagreement(formula, limit=request.oracle_limit),
            "core": None,
        }
        if psi is not None:
            best = best_report(sweep_t(formula, psi, _sweep(request, formula), CoreParams(t=1)))
            out["core"] = best.to_dict()
    except KSatError as exc:
        raise _http_error(exc) from None
    return out
