"""Complete satisfiability checking behind the process acceptance rule.

``check_satisfiable`` is a small DPLL (unit propagation, pure literals,
branching). The acceptance checkers wrap a witness cache around a complete
backend: a candidate clause already satisfied by the cached witness is
accepted without search.
"""

import logging
from abc import ABC, abstractmethod
from collections import Counter
from typing import Dict, Iterable, List, Optional, Sequence

from pysat.solvers import Solver

from cnf import Assignment, Clause, Formula, evaluate
from cnf.formula import AnyFormula
from errors import InvalidParametersError

logger = logging.getLogger(__name__)

IntClause = List[int]


def _assign(clauses: List[IntClause], literal: int) -> Optional[List[IntClause]]:
    """Clauses after making ``literal`` true; None if a clause empties."""
    out = []
    for clause in clauses:
        if literal in clause:
            continue
        if -literal in clause:
            reduced = [lit for lit in clause if lit != -literal]
            if not reduced:
                return None
            out.append(reduced)
        else:
            out.append(clause)
    return out


def _choose_literal(clauses: List[IntClause]) -> int:
    shortest = min(len(c) for c in clauses)
    counts = Counter(lit for c in clauses if len(c) == shortest for lit in c)
    # most frequent in the shortest clauses; ties on smallest variable then positive
    return min(counts, key=lambda lit: (-counts[lit], abs(lit), lit < 0))


def _dpll(clauses: List[IntClause], values: Dict[int, bool]) -> Optional[Dict[int, bool]]:
    while True:
        units = [c[0] for c in clauses if len(c) == 1]
        if not units:
            break
        for lit in units:
            if abs(lit) in values:
                if values[abs(lit)] != (lit > 0):
                    return None
                continue
            values[abs(lit)] = lit > 0
            clauses = _assign(clauses, lit)
            if clauses is None:
                return None
    if not clauses:
        return values
    occurring = {lit for c in clauses for lit in c}
    pure = sorted(lit for lit in occurring if -lit not in occurring)
    if pure:
        for lit in pure:
            values[abs(lit)] = lit > 0
            clauses = _assign(clauses, lit)
        return _dpll(clauses, values)
    lit = _choose_literal(clauses)
    for choice in (lit, -lit):
        reduced = _assign(clauses, choice)
        if reduced is None:
            continue
        result = _dpll(reduced, {**values, abs(choice): choice > 0})
        if result is not None:
            return result
    return None


def check_satisfiable_clauses(n: int, clauses: Iterable[Clause]) -> Optional[Assignment]:
    """DPLL over any clause collection; returns a witness or None."""
    int_clauses = [clause.to_dimacs() for clause in clauses]
    if any(not c for c in int_clauses):
        return None
    values = _dpll(int_clauses, {})
    if values is None:
        return None
    return Assignment([values.get(v + 1, False) for v in range(n)])


def check_satisfiable(formula: Formula) -> Optional[Assignment]:
    """Complete decision procedure; a witness iff the formula is satisfiable.

    Unconstrained variables default to FALSE, so the empty formula yields all-FALSE.
    """
    return check_satisfiable_clauses(formula.n, formula.clauses)


class AcceptanceChecker(ABC):
    """Decides, clause by clause, whether the formula so far stays satisfiable."""

    name = "base"

    def __init__(self, n: int) -> None:
        self.n = n
        self.witness = Assignment.all_false(n)
        self.searches = 0

    def offer(self, clause: Clause) -> bool:
        """Accept (and remember) the clause iff formula + clause is satisfiable."""
        if evaluate(clause, self.witness):
            self._add(clause)
            return True
        self.searches += 1
        witness = self._search(clause)
        if witness is None:
            logger.debug("rejected %s", clause)
            return False
        self.witness = witness
        return True

    @abstractmethod
    def _add(self, clause: Clause) -> None:
        """Record an accepted clause whose acceptance needed no search."""

    @abstractmethod
    def _search(self, clause: Clause) -> Optional[Assignment]:
        """Complete check of formula + clause; on success the clause is kept."""

    def close(self) -> None:
        pass


class DpllChecker(AcceptanceChecker):
    name = "dpll"

    def __init__(self, n: int) -> None:
        super().__init__(n)
        self._clauses: List[Clause] = []

    def _add(self, clause: Clause) -> None:
        self._clauses.append(clause)

    def _search(self, clause: Clause) -> Optional[Assignment]:
        witness = check_satisfiable_clauses(self.n, self._clauses + [clause])
        if witness is not None:
            self._clauses.append(clause)
        return witness


class PySatChecker(AcceptanceChecker):
    """Incremental backend; each searched clause gets a fresh selector literal."""

    name = "pysat"

    def __init__(self, n: int, solver_name: str = "minisat22") -> None:
        super().__init__(n)
        self._solver = Solver(name=solver_name)
        self._next_var = n + 1

    def _add(self, clause: Clause) -> None:
        self._solver.add_clause(clause.to_dimacs())

    def _search(self, clause: Clause) -> Optional[Assignment]:
        selector = self._next_var
        self._next_var += 1
        self._solver.add_clause(clause.to_dimacs() + [-selector])
        if self._solver.solve(assumptions=[selector]):
            model = self._solver.get_model()
            self._solver.add_clause([selector])
            return Assignment.from_dimacs_model(model, self.n)
        self._solver.add_clause([-selector])
        return None

    def close(self) -> None:
        self._solver.delete()


_CHECKERS = {
    DpllChecker.name: DpllChecker,
    PySatChecker.name: PySatChecker,
}


def make_checker(name: str, n: int, dpll_max_n: int = 40) -> AcceptanceChecker:
    """Backend by name; ``auto`` uses DPLL up to ``dpll_max_n`` variables."""
    if name == "auto":
        name = DpllChecker.name if n <= dpll_max_n else PySatChecker.name
    try:
        return _CHECKERS[name](n)
    except KeyError:
        raise InvalidParametersError(f"unknown checker backend {name!r}; choose from {sorted(_CHECKERS)}") from None


def checker_names() -> Sequence[str]:
    return ("auto",) + tuple(sorted(_CHECKERS))


def solve_complete(formula: AnyFormula, backend: str = "auto", dpll_max_n: int = 40) -> Optional[Assignment]:
    """One-shot complete solve with the named backend; None iff unsatisfiable."""
    if backend == "auto":
        backend = DpllChecker.name if formula.n <= dpll_max_n else PySatChecker.name
    if backend == DpllChecker.name:
        return check_satisfiable_clauses(formula.n, formula.clauses)
    if backend != PySatChecker.name:
        raise InvalidParametersError(f"unknown checker backend {backend!r}; choose from {sorted(_CHECKERS)}")
    with Solver(name="minisat22", bootstrap_with=[c.to_dimacs() for c in formula.clauses]) as solver:
        if not solver.solve():
            return None
        return Assignment.from_dimacs_model(solver.get_model() or [], formula.n)
