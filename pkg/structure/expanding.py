"""Building a t-expanding set by peeling weakly supporting variables."""

import heapq
import logging
from typing import FrozenSet

import numpy as np

from cnf import Assignment, Formula, is_expanding, support_vector
from cnf.incidence import Incidence
from errors import ContractViolationError
from models import CoreParams

logger = logging.getLogger(__name__)


def _key(v: int, highest_first: bool) -> int:
    return -v if highest_first else v


def build_expanding_set(
    formula: Formula, psi: Assignment, params: CoreParams, highest_first: bool = False
) -> FrozenSet[int]:
    """Z such that every member supports at least keep_factor*t clauses of F[Z] under psi.

    Phase one drops every variable supporting fewer than init_factor*t clauses of
    the whole formula. Phase two repeatedly removes the lowest-indexed variable
    whose support inside F[Z] falls below keep_factor*t.
    """
    full = support_vector(formula, psi)
    members = full >= float(params.init_threshold)
    logger.debug("expanding set: %d of %d variables pass the initial threshold", int(members.sum()), formula.n)

    incidence = Incidence(formula, psi)
    inside = incidence.inside(members)
    support = incidence.support_inside(inside)
    keep = float(params.keep_threshold)
    heap = [_key(int(v), highest_first) for v in np.flatnonzero(members & (support < keep))]
    heapq.heapify(heap)
    removals = 0
    while heap:
        v = abs(heapq.heappop(heap))
        if not members[v]:
            continue
        members[v] = False
        removals += 1
        if removals > formula.n:
            raise ContractViolationError("expanding-set peeling did not terminate")
        for c in incidence.occurrences[v]:
            if not inside[c]:
                continue
            inside[c] = False
            s = incidence.supporter[c]
            if s >= 0 and s != v and members[s]:
                support[s] -= 1
                if support[s] < keep:
                    heapq.heappush(heap, _key(s, highest_first))

    result = frozenset(int(v) for v in np.flatnonzero(members))
    if not is_expanding(formula, result, psi, keep):
        raise ContractViolationError("expanding set failed re-verification")
    logger.debug("expanding set: removed %d in phase two, |Z|=%d", removals, len(result))
    return result
