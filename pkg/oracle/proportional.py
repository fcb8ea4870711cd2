"""Search for small variable sets with too many clauses touching them twice.

A formula is rho-proportional when no set U of at most ``size_cap`` variables
has rho*|U| or more clauses each containing at least two variables of U.
"""

import logging
from itertools import combinations, islice
from math import comb
from typing import Iterable, Optional, Tuple

import numpy as np

from cnf import Formula
from config import get_config
from errors import ContractViolationError, InvalidParametersError
from models import ProportionalityReport

logger = logging.getLogger(__name__)

_BATCH_CELLS = 1 << 22
_GREEDY_SEEDS = 32


def dense_count(formula: Formula, subset: Iterable[int]) -> int:
    """Clauses containing at least two variables of ``subset``."""
    members = set(subset)
    return sum(1 for c in formula.clauses if len(members.intersection(c.variables)) >= 2)


def _clause_masks(formula: Formula) -> np.ndarray:
    variables, _ = formula.matrix
    weights = np.left_shift(np.uint64(1), variables.astype(np.uint64))
    return np.bitwise_or.reduce(weights, axis=1) if formula.m else np.zeros(0, dtype=np.uint64)


def _exhaustive(
    formula: Formula, rho: float, max_size: int
) -> Optional[Tuple[Tuple[int, ...], int]]:
    """First violation by size, then lexicographic order; None if there is none."""
    masks = _clause_masks(formula)
    if masks.size == 0:
        return None
    batch = max(1, _BATCH_CELLS // masks.size)
    for size in range(2, max_size + 1):
        needed = rho * size
        combos = combinations(range(formula.n), size)
        while True:
            chunk = list(islice(combos, batch))
            if not chunk:
                break
            subset_masks = np.array(
                [sum(1 << v for v in c) for c in chunk], dtype=np.uint64
            )
            overlap = np.bitwise_count(subset_masks[:, None] & masks[None, :])
            counts = (overlap >= 2).sum(axis=1)
            hits = np.flatnonzero(counts >= needed)
            if hits.size:
                first = int(hits[0])
                return chunk[first], int(counts[first])
    return None


def _greedy(formula: Formula, rho: float, size_cap: int) -> Optional[Tuple[Tuple[int, ...], int]]:
    """Grow sets from the most co-occurring pairs; reports only verified violations."""
    variables, _ = formula.matrix
    n = formula.n
    pair_counts = {}
    for row in variables.tolist():
        for pair in combinations(row, 2):
            pair_counts[pair] = pair_counts.get(pair, 0) + 1
    seeds = sorted(pair_counts, key=lambda pr: (-pair_counts[pr], pr))[:_GREEDY_SEEDS]
    for seed in seeds:
        in_set = np.zeros(n, dtype=bool)
        in_set[list(seed)] = True
        while True:
            per_clause = in_set[variables].sum(axis=1)
            size = int(in_set.sum())
            count = int((per_clause >= 2).sum())
            if count >= rho * size:
                members = tuple(int(v) for v in np.flatnonzero(in_set))
                return members, count
            if size >= size_cap:
                break
            # a variable's gain is the number of clauses where it would be the second member
            touching = variables[per_clause == 1].ravel()
            gains = np.bincount(touching, minlength=n)
            gains[in_set] = -1
            best = int(gains.argmax())
            if gains[best] <= 0:
                break
            in_set[best] = True
    return None


def check_proportional(
    formula: Formula,
    rho: float,
    size_cap: int,
    exhaustive_limit: Optional[int] = None,
    subset_budget: Optional[int] = None,
) -> ProportionalityReport:
    """Exhaustive search up to min(size_cap, exhaustive_limit), greedy beyond it.

    ``exhaustive`` is set only when every subset up to ``size_cap`` was examined.
    """
    if rho <= 0:
        raise InvalidParametersError("rho must be positive")
    settings = get_config().oracle
    limit = exhaustive_limit if exhaustive_limit is not None else settings.proportional_exhaustive_limit
    budget = subset_budget if subset_budget is not None else settings.proportional_subset_budget
    n = formula.n
    cap = min(size_cap, n)
    top = min(cap, limit) if n <= 62 else 1
    depth = 1
    while depth < top and sum(comb(n, s) for s in range(2, depth + 2)) <= budget:
        depth += 1
    report = ProportionalityReport(rho=rho, size_cap=size_cap, exhaustive=depth >= cap)
    found = _exhaustive(formula, rho, depth) if formula.m and depth >= 2 else None
    if found is None and depth < cap and formula.m:
        found = _greedy(formula, rho, cap)
    if found is not None:
        members, count = found
        # re-verify before reporting
        if dense_count(formula, members) != count or count < rho * len(members):
            raise ContractViolationError(f"unverified proportionality violation {members}")
        report.violating_set = frozenset(members)
        report.violating_count = count
        logger.info("proportionality violated by %s (%d clauses, rho=%g)", members, count, rho)
    return report
