"""Step 1: majority vote."""

import logging

from cnf import Assignment, Formula, appearance_counts

from .base import BaseStep, SolveState

logger = logging.getLogger(__name__)


def majority_vote(formula: Formula) -> Assignment:
    """TRUE iff the variable occurs positively more often than negatively; ties are FALSE."""
    if formula.m == 0:
        return Assignment.all_false(formula.n)
    pos, neg = appearance_counts(formula)
    return Assignment(pos - neg > 0)


class MajorityStep(BaseStep):
    name = "majority"

    def run(self, state: SolveState) -> None:
        state.majority = majority_vote(state.formula)
        state.assignment = state.majority
        state.diagnostics.majority_true = len(state.majority.true_variables())
        logger.debug("MAJ sets %d variables TRUE", state.diagnostics.majority_true)
