"""Building a t-core inside an expanding set."""

import heapq
import logging
from typing import FrozenSet, Iterable

import numpy as np

from cnf import Assignment, Formula, is_expanding, is_self_contained, variable_mask
from cnf.incidence import Incidence
from errors import ContractViolationError
from models import CoreParams

logger = logging.getLogger(__name__)


def build_core(
    formula: Formula,
    Z: Iterable[int],
    psi: Assignment,
    params: CoreParams,
    highest_first: bool = False,
) -> FrozenSet[int]:
    """Peel Z until every member appears in at most core_out_factor*t clauses
    outside F[H] and supports at least core_support_factor*t clauses inside it."""
    members = variable_mask(formula.n, Z)
    incidence = Incidence(formula, psi)
    inside = incidence.inside(members)
    support = incidence.support_inside(inside)
    outside = np.zeros(formula.n, dtype=np.int64)
    for c in np.flatnonzero(~inside):
        for u in incidence.variables[c]:
            outside[u] += 1
    out_limit = float(params.core_out_threshold)
    support_floor = float(params.core_support_threshold)

    def failing(u: int) -> bool:
        return outside[u] > out_limit or support[u] < support_floor

    sign = -1 if highest_first else 1
    heap = [sign * int(v) for v in np.flatnonzero(members) if failing(int(v))]
    heapq.heapify(heap)
    removals = 0
    while heap:
        v = sign * heapq.heappop(heap)
        if not members[v]:
            continue
        members[v] = False
        removals += 1
        if removals > formula.n:
            raise ContractViolationError("core peeling did not terminate")
        for c in incidence.occurrences[v]:
            if not inside[c]:
                continue
            inside[c] = False
            s = incidence.supporter[c]
            if s >= 0:
                support[s] -= 1
            for u in incidence.variables[c]:
                outside[u] += 1
                if members[u] and failing(u):
                    heapq.heappush(heap, sign * u)

    result = frozenset(int(v) for v in np.flatnonzero(members))
    if not (
        is_expanding(formula, result, psi, support_floor)
        and is_self_contained(formula, result, out_limit)
    ):
        raise ContractViolationError("core failed re-verification")
    logger.debug("core: removed %d of %d, |H|=%d", removals, removals + len(result), len(result))
    return result
