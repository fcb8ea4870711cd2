"""Step 3: unassign variables until every assigned one supports at least t clauses."""

import heapq
import logging

import numpy as np

from cnf import Assignment, Formula, PartialAssignment
from models import SolverConfig
from cnf.incidence import Incidence

from .base import BaseStep, SolveState

logger = logging.getLogger(__name__)


def unassignment(
    formula: Formula, psi: Assignment, config: SolverConfig, highest_first: bool = False
) -> PartialAssignment:
    """Repeatedly unassign the lowest-indexed assigned variable with partial support below unassign_factor*t.

    A clause stops counting for its supporter as soon as any of its variables is unassigned.
    """
    threshold = config.unassign_factor * config.t
    incidence = Incidence(formula, psi)
    assigned = np.ones(formula.n, dtype=bool)
    broken = np.zeros(formula.m, dtype=bool)
    supporters = np.array([s for s in incidence.supporter if s >= 0], dtype=np.int64)
    support = np.bincount(supporters, minlength=formula.n).astype(np.int64)
    sign = -1 if highest_first else 1
    heap = [sign * int(v) for v in np.flatnonzero(support < threshold)]
    heapq.heapify(heap)
    while heap:
        v = sign * heapq.heappop(heap)
        if not assigned[v]:
            continue
        assigned[v] = False
        for c in incidence.occurrences[v]:
            if broken[c]:
                continue
            broken[c] = True
            s = incidence.supporter[c]
            if s >= 0 and s != v and assigned[s]:
                support[s] -= 1
                if support[s] < threshold:
                    heapq.heappush(heap, sign * s)
    partial = PartialAssignment.from_assignment(psi, np.flatnonzero(assigned).tolist())
    logger.debug("unassigned %d of %d variables", int((~assigned).sum()), formula.n)
    return partial


class UnassignStep(BaseStep):
    name = "unassign"

    def run(self, state: SolveState) -> None:
        state.partial = unassignment(state.formula, state.assignment, state.config)
        state.diagnostics.unassigned = len(state.partial.unassigned_variables())
