"""Run the steps of the majority-vote solver in order, once per t of the sweep."""

import logging
import math
from dataclasses import replace
from typing import List, Optional, Sequence, Tuple

from cnf import Formula, hamming_distance, satisfies
from config import get_config
from errors import ContractViolationError
from models import SolveOutcome, SolverConfig, StageDiagnostics
from process.checker import solve_complete

from .base import BaseStep, SolveState
from .exhaustive import ExhaustiveStep
from .majority import MajorityStep
from .propagation import PropagationStep
from .reassign import ReassignStep
from .unassign import UnassignStep

logger = logging.getLogger(__name__)


def default_steps() -> List[BaseStep]:
    return [MajorityStep(), ReassignStep(), UnassignStep(), PropagationStep(), ExhaustiveStep()]


def default_t_sweep(formula: Formula, betas: Optional[Sequence[float]] = None) -> Tuple[int, ...]:
    """t = ceil(beta * m/n) for each beta, deduplicated in order, at least 1."""
    if betas is None:
        betas = get_config().solver.t_sweep_betas
    ratio = formula.m / formula.n if formula.n else 0.0
    sweep: List[int] = []
    for beta in betas:
        t = max(1, math.ceil(beta * ratio))
        if t not in sweep:
            sweep.append(t)
    return tuple(sweep)


def run_attempt(formula: Formula, config: SolverConfig, steps: Optional[List[BaseStep]] = None) -> SolveState:
    """One pass of the pipeline at ``config.t``; stops at the first failing step."""
    state = SolveState(formula=formula, config=config, diagnostics=StageDiagnostics(t=config.t))
    for step in steps or default_steps():
        step.run(state)
        if state.failed:
            logger.debug("t=%d: %s failed with %s", config.t, step.name, state.diagnostics.failure.value)
            break
    return state


def solve(formula: Formula, config: Optional[SolverConfig] = None) -> SolveOutcome:
    """Majority-vote solver; the returned assignment, if any, has been checked against the formula."""
    config = config or SolverConfig()
    ts = config.t_sweep or (config.t,)
    outcome = SolveOutcome(assignment=None)
    for t in ts:
        state = run_attempt(formula, replace(config, t=t, t_sweep=None))
        outcome.stages.append(state.diagnostics)
        if state.result is None:
            outcome.failure = state.diagnostics.failure
            continue
        if not satisfies(formula, state.result):
            raise ContractViolationError(f"t={t}: pipeline produced a non-satisfying assignment")
        state.diagnostics.majority_disagreement = hamming_distance(state.majority, state.result)
        outcome.assignment = state.result
        outcome.failure = None
        outcome.t_used = t
        logger.info("solved at t=%d (MAJ disagreement %d)", t, state.diagnostics.majority_disagreement)
        return outcome

    logger.info("solver failed for every t in %s: %s", list(ts), outcome.failure.value)
    if config.fallback_complete:
        settings = get_config().generator
        witness = solve_complete(formula, settings.checker_backend, settings.dpll_max_n)
        if witness is not None and satisfies(formula, witness):
            outcome.assignment = witness
            outcome.fallback_used = True
            logger.info("complete fallback found a satisfying assignment")
    return outcome
