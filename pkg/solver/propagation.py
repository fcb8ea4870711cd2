"""Step 4: unit-clause propagation over the residual formula."""

import logging
from dataclasses import dataclass, field
from typing import Dict, Optional

import numpy as np

from cnf import PartialAssignment, ResidualFormula, TriState, restrict_partial
from cnf.formula import simplify_under
from errors import SimplificationConflict
from models import FailureReason

from .base import BaseStep, SolveState

logger = logging.getLogger(__name__)


@dataclass
class Propagation:
    """Outcome of unit propagation; ``residual`` is None after a conflict."""

    partial: PartialAssignment
    residual: Optional[ResidualFormula]
    levels: Dict[int, int] = field(default_factory=dict)
    rounds: int = 0

    @property
    def conflict(self) -> bool:
        return self.residual is None


def unit_propagation(residual: ResidualFormula, xi: PartialAssignment) -> Propagation:
    """Satisfy all width-1 clauses of a round at once, simplify, repeat.

    ``levels`` maps every propagated variable to the round that set it.
    """
    values = xi.values.copy()
    levels: Dict[int, int] = {}
    rounds = 0
    current = residual
    while True:
        units: Dict[int, bool] = {}
        for clause in current.clauses:
            if clause.width != 1:
                continue
            lit = clause.literals[0]
            if units.setdefault(lit.variable, lit.positive) != lit.positive:
                logger.debug("conflicting units on variable %d in round %d", lit.variable, rounds + 1)
                return Propagation(PartialAssignment(values), None, levels, rounds + 1)
        if not units:
            break
        rounds += 1
        newly = np.zeros(residual.n, dtype=bool)
        for v, positive in units.items():
            values[v] = TriState.TRUE if positive else TriState.FALSE
            newly[v] = True
            levels[v] = rounds
        try:
            current = simplify_under(current, newly, values == TriState.TRUE)
        except SimplificationConflict as exc:
            logger.debug("propagation emptied %s in round %d", exc.clause, rounds)
            return Propagation(PartialAssignment(values), None, levels, rounds)
    return Propagation(PartialAssignment(values), current, levels, rounds)


class PropagationStep(BaseStep):
    name = "propagation"

    def run(self, state: SolveState) -> None:
        try:
            residual = restrict_partial(state.formula, state.partial)
        except SimplificationConflict:
            # the unassignment fixpoint left a clause falsified over assigned variables
            state.fail(FailureReason.PROPAGATION_CONFLICT)
            return
        result = unit_propagation(residual, state.partial)
        state.diagnostics.propagation_rounds = result.rounds
        state.diagnostics.propagated = len(result.levels)
        state.levels = result.levels
        state.partial = result.partial
        if result.conflict:
            state.fail(FailureReason.PROPAGATION_CONFLICT)
            return
        state.residual = result.residual
        state.diagnostics.residual_clauses = result.residual.m
