"""Step 2: flip variables that support too few clauses."""

import logging
import math
from typing import List, Tuple

import numpy as np

from cnf import Assignment, Formula, support_vector
from models import FlipMode, SolverConfig

from .base import BaseStep, SolveState

logger = logging.getLogger(__name__)


def reassign_iterations(config: SolverConfig, n: int) -> int:
    if config.reassign_iters is not None:
        return config.reassign_iters
    return max(1, math.ceil(math.log2(n))) if n > 1 else 1


def _sequential_round(formula: Formula, values: np.ndarray, threshold: float) -> int:
    """Scan variables in index order, flipping each against the current values."""
    variables, negated = formula.matrix
    occurrences: List[List[int]] = [[] for _ in range(formula.n)]
    for c, row in enumerate(variables.tolist()):
        for v in row:
            occurrences[v].append(c)
    flips = 0
    for v in range(formula.n):
        rows = occurrences[v]
        support = 0
        if rows:
            truth = values[variables[rows]] != negated[rows]
            unique = truth.sum(axis=1) == 1
            mine = variables[rows] == v
            support = int((unique & (truth & mine).any(axis=1)).sum())
        if support < threshold:
            values[v] = not values[v]
            flips += 1
    return flips


def reassign_with_trace(formula: Formula, start: Assignment, config: SolverConfig) -> Tuple[Assignment, List[int]]:
    """The reassigned assignment and the flip count of every round run."""
    threshold = config.reassign_flip_factor * config.t
    current = start
    flips_per_round: List[int] = []
    for _ in range(reassign_iterations(config, formula.n)):
        if config.flip_mode is FlipMode.SEQUENTIAL:
            values = current.values.copy()
            flips = _sequential_round(formula, values, threshold)
            current = Assignment(values)
        else:
            # decisions in a round depend only on the round-start snapshot
            weak = support_vector(formula, current) < threshold
            flips = int(weak.sum())
            current = Assignment(current.values ^ weak)
        flips_per_round.append(flips)
        logger.debug("reassignment round %d: %d flips", len(flips_per_round), flips)
        if flips == 0:
            break
    return current, flips_per_round


def reassignment(formula: Formula, start: Assignment, config: SolverConfig) -> Assignment:
    return reassign_with_trace(formula, start, config)[0]


class ReassignStep(BaseStep):
    name = "reassign"

    def run(self, state: SolveState) -> None:
        state.assignment, flips = reassign_with_trace(state.formula, state.assignment, state.config)
        state.diagnostics.flips_per_round = flips
