"""Occurrence counts and how far the majority vote sits from the solutions."""

from typing import Optional, Sequence, Tuple

import numpy as np

from cnf import Assignment, Formula, appearance_counts
from cnf.formula import _check_variable
from solver.majority import majority_vote

from .enumerate import codes_to_matrix, solution_codes


def count_appearances(formula: Formula, variable: int) -> Tuple[int, int]:
    """(|N+(x)|, |N-(x)|): clauses containing x and clauses containing not-x."""
    _check_variable(formula, variable)
    if formula.m == 0:
        return 0, 0
    pos, neg = appearance_counts(formula)
    return int(pos[variable]), int(neg[variable])


def majority_disagreement(
    formula: Formula, solutions: Optional[Sequence[Assignment]] = None, limit: Optional[int] = None
) -> Optional[int]:
    """Largest Hamming distance between MAJ and any satisfying assignment.

    Enumerates the solutions when none are given; None when there are none.
    """
    if solutions is None:
        matrix = codes_to_matrix(solution_codes(formula, limit), formula.n)
    else:
        matrix = np.array([s.values for s in solutions], dtype=bool).reshape(-1, formula.n)
    if matrix.shape[0] == 0:
        return None
    majority = majority_vote(formula).values
    return int((matrix != majority[None, :]).sum(axis=1).max())
