"""Exhaustive enumeration of satisfying assignments for small n.

Assignments are encoded as integer codes in lexicographic order: variable v
is bit (n - 1 - v), so x1 is the most significant bit and ascending codes
are ascending assignments.
"""

import logging
from typing import Iterable, List, Optional, Tuple

import numpy as np

from cnf import Assignment, Clause
from cnf.formula import AnyFormula
from config import get_config
from errors import OracleLimitError

logger = logging.getLogger(__name__)

CHUNK_BITS = 22


def _limit(limit: Optional[int]) -> int:
    return limit if limit is not None else get_config().oracle.max_n


def check_oracle_limit(n: int, limit: Optional[int] = None) -> None:
    cap = _limit(limit)
    if n > cap:
        raise OracleLimitError(f"brute-force enumeration refused at n={n} (limit {cap})")


def _clause_tests(clauses: Iterable[Clause], n: int) -> List[List[Tuple[int, int]]]:
    return [[(n - 1 - lit.variable, 1 if lit.positive else 0) for lit in clause.literals] for clause in clauses]


def filter_codes(codes: np.ndarray, clauses: Iterable[Clause], n: int) -> np.ndarray:
    """The codes that satisfy every clause; order is preserved."""
    for clause in _clause_tests(clauses, n):
        if codes.size == 0:
            break
        keep = np.zeros(codes.size, dtype=bool)
        for shift, want in clause:
            keep |= ((codes >> shift) & 1) == want
        codes = codes[keep]
    return codes


def solution_codes(formula: AnyFormula, limit: Optional[int] = None) -> np.ndarray:
    """Sorted int64 codes of every satisfying assignment."""
    n = formula.n
    check_oracle_limit(n, limit)
    total = 1 << n
    chunk = 1 << min(n, CHUNK_BITS)
    found = []
    for start in range(0, total, chunk):
        codes = filter_codes(np.arange(start, min(start + chunk, total), dtype=np.int64), formula.clauses, n)
        if codes.size:
            found.append(codes)
    out = np.concatenate(found) if found else np.zeros(0, dtype=np.int64)
    logger.debug("enumerated %d solutions over n=%d", out.size, n)
    return out


def code_to_assignment(code: int, n: int) -> Assignment:
    return Assignment([(int(code) >> (n - 1 - v)) & 1 == 1 for v in range(n)])


def assignment_to_code(assignment: Assignment) -> int:
    n = len(assignment)
    return sum(1 << (n - 1 - v) for v in range(n) if assignment[v])


def codes_to_matrix(codes: np.ndarray, n: int) -> np.ndarray:
    """(len(codes), n) boolean matrix; row i is solution i."""
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    return ((codes[:, None] >> shifts[None, :]) & 1).astype(bool)


def enumerate_solutions(formula: AnyFormula, limit: Optional[int] = None) -> List[Assignment]:
    """All satisfying assignments in lexicographic order (x1 most significant)."""
    codes = solution_codes(formula, limit)
    return [Assignment(row) for row in codes_to_matrix(codes, formula.n)]


def count_solutions(formula: AnyFormula, limit: Optional[int] = None) -> int:
    """beta(F)."""
    return int(solution_codes(formula, limit).size)
