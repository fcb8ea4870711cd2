"""Satellite closure: variables forced around a core by clauses whose other literals are false."""

import logging
from typing import Dict, FrozenSet, Iterable, Tuple

from cnf import Assignment
from cnf.formula import AnyFormula

logger = logging.getLogger(__name__)


def satellite_levels(formula: AnyFormula, H: Iterable[int], phi: Assignment) -> Dict[int, int]:
    """Level of every variable reached from H (level 0) by the closure.

    x joins level i through a clause whose other literals are all false under
    phi, all over variables of levels below i, and at least one at level i-1.
    """
    level: Dict[int, int] = {int(v): 0 for v in H}
    occurrences: Dict[int, list] = {}
    for clause in formula.clauses:
        for v in clause.variables:
            occurrences.setdefault(v, []).append(clause)
    frontier = sorted(level)
    depth = 0
    while frontier:
        depth += 1
        reached = set()
        for z in frontier:
            for clause in occurrences.get(z, ()):
                open_vars = [lit.variable for lit in clause.literals if lit.variable not in level]
                if len(open_vars) != 1:
                    continue
                others_false = all(
                    not lit.value_under(phi[lit.variable])
                    for lit in clause.literals
                    if lit.variable in level
                )
                if others_false:
                    reached.add(open_vars[0])
        for x in reached:
            level[x] = depth
        frontier = sorted(reached)
        if reached:
            logger.debug("satellite level %d: %d variables", depth, len(reached))
    return level


def satellite_closure(formula: AnyFormula, H: Iterable[int], phi: Assignment) -> Tuple[FrozenSet[int], Dict[int, int]]:
    """S (levels one and up) and the level of each of its members."""
    levels = {v: lvl for v, lvl in satellite_levels(formula, H, phi).items() if lvl >= 1}
    return frozenset(levels), levels
