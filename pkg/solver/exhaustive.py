"""Step 5: brute force over each small component of the residual formula."""

import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from cnf import Assignment, Clause, PartialAssignment, ResidualFormula, TriState, clause_components
from models import FailureReason, SolverConfig

from .base import BaseStep, SolveState

logger = logging.getLogger(__name__)

_CHUNK = 1 << 20


@dataclass
class ComponentSearch:
    assignment: Optional[Assignment]
    failure: Optional[FailureReason] = None
    component_sizes: List[int] = field(default_factory=list)


def component_cap(config: SolverConfig, n: int) -> int:
    if config.component_cap is not None:
        return config.component_cap
    return max(1, config.c_cap * math.ceil(math.log2(n))) if n > 1 else config.c_cap


def least_solution(variables: Sequence[int], clauses: Sequence[Clause]) -> Optional[List[bool]]:
    """Lexicographically least satisfying values over ``variables`` (first variable most significant)."""
    size = len(variables)
    position = {v: i for i, v in enumerate(variables)}
    tests = [
        [(size - 1 - position[lit.variable], 1 if lit.positive else 0) for lit in clause.literals]
        for clause in clauses
    ]
    total = 1 << size
    for start in range(0, total, _CHUNK):
        codes = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        for clause in tests:
            keep = np.zeros(codes.size, dtype=bool)
            for shift, want in clause:
                keep |= ((codes >> shift) & 1) == want
            codes = codes[keep]
            if codes.size == 0:
                break
        if codes.size:
            code = int(codes[0])
            return [(code >> (size - 1 - i)) & 1 == 1 for i in range(size)]
    return None


def exhaustive_component_search(
    residual: ResidualFormula, xi: PartialAssignment, config: SolverConfig
) -> ComponentSearch:
    """Complete ``xi`` component by component; untouched unassigned variables default FALSE."""
    cap = component_cap(config, residual.n)
    values = xi.values.copy()
    components = clause_components(residual)
    sizes = [len(variables) for variables, _ in components]
    oversized = [s for s in sizes if s > cap]
    if oversized:
        logger.debug("component of size %d exceeds cap %d", oversized[0], cap)
        return ComponentSearch(None, FailureReason.COMPONENT_TOO_LARGE, sizes)
    for variables, clauses in components:
        ordered = sorted(variables)
        solution = least_solution(ordered, clauses)
        if solution is None:
            logger.debug("component %s has no satisfying assignment", ordered)
            return ComponentSearch(None, FailureReason.EXHAUSTIVE_UNSAT, sizes)
        for v, value in zip(ordered, solution):
            values[v] = TriState.TRUE if value else TriState.FALSE
    return ComponentSearch(PartialAssignment(values).completed(default=False), None, sizes)


class ExhaustiveStep(BaseStep):
    name = "exhaustive"

    def run(self, state: SolveState) -> None:
        search = exhaustive_component_search(state.residual, state.partial, state.config)
        state.diagnostics.component_sizes = search.component_sizes
        if search.failure is not None:
            state.fail(search.failure)
            return
        state.result = search.assignment
