"""Clause/variable incidence with per-clause supporters, shared by the peeling procedures."""

from typing import List

import numpy as np

from .assignment import Assignment
from .formula import Formula, literal_truth


class Incidence:
    """For each variable the clauses it occurs in; for each clause its supporter under psi (-1 if none)."""

    def __init__(self, formula: Formula, psi: Assignment) -> None:
        self.n = formula.n
        self.m = formula.m
        if formula.m:
            variables, _ = formula.matrix
            truth = literal_truth(formula, psi.values)
            unique = truth.sum(axis=1) == 1
            supporter = np.full(formula.m, -1, dtype=np.int64)
            supporter[unique] = variables[unique, truth[unique].argmax(axis=1)]
            self.variables: List[List[int]] = variables.tolist()
            self.supporter: List[int] = supporter.tolist()
        else:
            self.variables = []
            self.supporter = []
        self.occurrences: List[List[int]] = [[] for _ in range(formula.n)]
        for c, row in enumerate(self.variables):
            for v in row:
                self.occurrences[v].append(c)

    def inside(self, members: np.ndarray) -> np.ndarray:
        """Per clause, whether all its variables lie in ``members`` (a boolean mask)."""
        if not self.m:
            return np.zeros(0, dtype=bool)
        return members[np.asarray(self.variables)].all(axis=1)

    def support_inside(self, inside: np.ndarray) -> np.ndarray:
        counts = np.zeros(self.n, dtype=np.int64)
        for c in np.flatnonzero(inside):
            s = self.supporter[c]
            if s >= 0:
                counts[s] += 1
        return counts
