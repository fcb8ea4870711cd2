"""Formulas, residual formulas and the clause-level operations on them.

A Formula is a process-generated k-CNF: uniform width, distinct clauses, order
meaningful. A ResidualFormula is what remains after assigning some variables
and simplifying, so its clauses have mixed widths 1..k.
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from errors import (
    ContractViolationError,
    IndexRangeError,
    InvalidParametersError,
    SimplificationConflict,
)

from .assignment import Assignment, PartialAssignment, TriState
from .clause import Clause, Literal

VariableSet = Iterable[int]


@dataclass(frozen=True)
class Formula:
    """Ordered sequence of distinct width-k clauses over n variables."""

    n: int
    k: int
    clauses: Tuple[Clause, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "clauses", tuple(self.clauses))
        if self.n < 0 or self.k < 1:
            raise InvalidParametersError(f"invalid formula shape n={self.n}, k={self.k}")
        seen = set()
        for clause in self.clauses:
            if clause.width != self.k:
                raise InvalidParametersError(f"clause {clause} has width {clause.width}, expected {self.k}")
            if clause.literals[-1].variable >= self.n:
                raise IndexRangeError(f"clause {clause} mentions a variable >= n={self.n}")
            if clause in seen:
                raise InvalidParametersError(f"duplicate clause {clause}")
            seen.add(clause)

    @property
    def m(self) -> int:
        return len(self.clauses)

    def __len__(self) -> int:
        return len(self.clauses)

    def __iter__(self) -> Iterator[Clause]:
        return iter(self.clauses)

    def __contains__(self, clause: object) -> bool:
        return clause in self.clause_set

    @cached_property
    def clause_set(self) -> frozenset:
        return frozenset(self.clauses)

    @cached_property
    def matrix(self) -> Tuple[np.ndarray, np.ndarray]:
        """(variables, negated) arrays of shape (m, k); rows follow clause order."""
        variables = np.array([c.variables for c in self.clauses], dtype=np.int64).reshape(-1, self.k)
        negated = np.array(
            [[not lit.positive for lit in c.literals] for c in self.clauses], dtype=bool
        ).reshape(-1, self.k)
        variables.flags.writeable = False
        negated.flags.writeable = False
        return variables, negated

    def with_clause(self, clause: Clause) -> "Formula":
        return Formula(self.n, self.k, self.clauses + (clause,))

    def prefix(self, m: int) -> "Formula":
        """The formula made of the first ``m`` clauses."""
        return Formula(self.n, self.k, self.clauses[:m])

    def __str__(self) -> str:
        return " & ".join(str(c) for c in self.clauses) or "(empty)"


@dataclass(frozen=True)
class ResidualFormula:
    """Mixed-width clauses left after assigning and simplifying; never an empty clause."""

    n: int
    clauses: Tuple[Clause, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "clauses", tuple(self.clauses))
        for clause in self.clauses:
            if clause.width == 0:
                raise SimplificationConflict(clause, "residual formula cannot store an empty clause")
            if clause.literals[-1].variable >= self.n:
                raise IndexRangeError(f"clause {clause} mentions a variable >= n={self.n}")

    @property
    def m(self) -> int:
        return len(self.clauses)

    def __len__(self) -> int:
        return len(self.clauses)

    def __iter__(self) -> Iterator[Clause]:
        return iter(self.clauses)

    def variables(self) -> List[int]:
        return sorted({v for c in self.clauses for v in c.variables})

    def __str__(self) -> str:
        return " & ".join(str(c) for c in self.clauses) or "(empty)"


AnyFormula = Union[Formula, ResidualFormula]


class FormulaBuilder:
    """Single-writer accumulator used while a process appends clauses."""

    def __init__(self, n: int, k: int) -> None:
        self.n = n
        self.k = k
        self._clauses: List[Clause] = []
        self._seen: set = set()

    def append(self, clause: Clause) -> None:
        if clause in self._seen:
            raise InvalidParametersError(f"duplicate clause {clause}")
        if clause.width != self.k:
            raise InvalidParametersError(f"clause {clause} has width {clause.width}, expected {self.k}")
        self._seen.add(clause)
        self._clauses.append(clause)

    def __contains__(self, clause: Clause) -> bool:
        return clause in self._seen

    def __len__(self) -> int:
        return len(self._clauses)

    @property
    def clauses(self) -> List[Clause]:
        return self._clauses

    def build(self) -> Formula:
        return Formula(self.n, self.k, tuple(self._clauses))


def variable_mask(n: int, variables: VariableSet) -> np.ndarray:
    mask = np.zeros(n, dtype=bool)
    idx = np.fromiter((int(v) for v in variables), dtype=np.int64)
    if idx.size:
        if idx.min() < 0 or idx.max() >= n:
            raise IndexRangeError(f"variable set is not a subset of [0, {n})")
        mask[idx] = True
    return mask


def _check_length(formula: AnyFormula, assignment) -> None:
    if len(assignment) != formula.n:
        raise ContractViolationError(
            f"assignment has length {len(assignment)}, formula has n={formula.n}"
        )


def _check_variable(formula: AnyFormula, variable: int) -> None:
    if not 0 <= variable < formula.n:
        raise IndexRangeError(f"variable {variable} outside [0, {formula.n})")


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------


def evaluate(clause: Clause, assignment: Assignment) -> bool:
    """True iff at least one literal of the clause is true."""
    return any(lit.value_under(assignment[lit.variable]) for lit in clause.literals)


def literal_truth(formula: Formula, values: np.ndarray) -> np.ndarray:
    """(m, k) boolean matrix of literal truth values under a total assignment."""
    variables, negated = formula.matrix
    return values[variables] != negated


def satisfies(formula: AnyFormula, assignment: Assignment) -> bool:
    """True iff every clause is satisfied; the empty formula is satisfied by anything."""
    _check_length(formula, assignment)
    if isinstance(formula, Formula):
        if formula.m == 0:
            return True
        return bool(literal_truth(formula, assignment.values).any(axis=1).all())
    return all(evaluate(c, assignment) for c in formula.clauses)


def falsified_clauses(formula: Formula, assignment: Assignment) -> List[int]:
    """Indices of clauses that the assignment falsifies."""
    _check_length(formula, assignment)
    if formula.m == 0:
        return []
    return [int(i) for i in np.flatnonzero(~literal_truth(formula, assignment.values).any(axis=1))]


# ---------------------------------------------------------------------------
# Support
# ---------------------------------------------------------------------------


def inside_mask(formula: Formula, scope: VariableSet) -> np.ndarray:
    """Boolean mask over clauses: True where every variable lies in ``scope`` (F[scope])."""
    in_scope = variable_mask(formula.n, scope)
    variables, _ = formula.matrix
    return in_scope[variables].all(axis=1)


def support_vector(
    formula: Formula, assignment: Assignment, scope: Optional[VariableSet] = None
) -> np.ndarray:
    """Support of every variable at once (length-n int array).

    A variable supports a clause when its literal is the only true literal of
    the clause. With ``scope``, only clauses of F[scope] are counted.
    """
    _check_length(formula, assignment)
    counts = np.zeros(formula.n, dtype=np.int64)
    if formula.m == 0:
        return counts
    variables, _ = formula.matrix
    truth = literal_truth(formula, assignment.values)
    unique = truth.sum(axis=1) == 1
    if scope is not None:
        unique &= inside_mask(formula, scope)
    supporters = variables[unique, truth[unique].argmax(axis=1)]
    return np.bincount(supporters, minlength=formula.n).astype(np.int64)


def support_count(
    formula: Formula, assignment: Assignment, variable: int, scope: Optional[VariableSet] = None
) -> int:
    """Number of clauses in which ``variable`` is the unique true literal."""
    _check_variable(formula, variable)
    return int(support_vector(formula, assignment, scope)[variable])


def partial_literal_states(formula: Formula, values: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """(true, unassigned) literal masks of shape (m, k) under tri-state ``values``."""
    variables, negated = formula.matrix
    states = values[variables]
    unassigned = states == TriState.UNASSIGNED
    true = ~unassigned & ((states == TriState.TRUE) != negated)
    return true, unassigned


def support_vector_partial(formula: Formula, partial: PartialAssignment) -> np.ndarray:
    """Support of every variable w.r.t. a partial assignment.

    A clause is supported by x when x's literal is true and every other literal
    is assigned and false; an unassigned co-literal disqualifies the clause.
    """
    _check_length(formula, partial)
    counts = np.zeros(formula.n, dtype=np.int64)
    if formula.m == 0:
        return counts
    variables, _ = formula.matrix
    true, unassigned = partial_literal_states(formula, partial.values)
    supported = (true.sum(axis=1) == 1) & ~unassigned.any(axis=1)
    supporters = variables[supported, true[supported].argmax(axis=1)]
    return np.bincount(supporters, minlength=formula.n).astype(np.int64)


def support_count_partial(formula: Formula, partial: PartialAssignment, variable: int) -> int:
    _check_variable(formula, variable)
    if not partial.is_assigned(variable):
        raise ContractViolationError(f"support of unassigned variable {variable} is undefined")
    return int(support_vector_partial(formula, partial)[variable])


# ---------------------------------------------------------------------------
# Sub-formulas and simplification
# ---------------------------------------------------------------------------


def induced_subformula(formula: AnyFormula, scope: VariableSet) -> AnyFormula:
    """F[scope]: the clauses whose variables all lie in ``scope``, order preserved."""
    in_scope = variable_mask(formula.n, scope)
    kept = tuple(c for c in formula.clauses if all(in_scope[v] for v in c.variables))
    if isinstance(formula, Formula):
        return Formula(formula.n, formula.k, kept)
    return ResidualFormula(formula.n, kept)


def appearance_counts(formula: Formula) -> Tuple[np.ndarray, np.ndarray]:
    """(positive, negative) occurrence counts per variable."""
    variables, negated = formula.matrix
    pos = np.bincount(variables[~negated], minlength=formula.n)
    neg = np.bincount(variables[negated], minlength=formula.n)
    return pos.astype(np.int64), neg.astype(np.int64)


def appearance_outside(formula: Formula, scope: VariableSet) -> np.ndarray:
    """Per variable, the number of clauses of F \\ F[scope] it appears in."""
    if formula.m == 0:
        return np.zeros(formula.n, dtype=np.int64)
    variables, _ = formula.matrix
    outside = ~inside_mask(formula, scope)
    return np.bincount(variables[outside].ravel(), minlength=formula.n).astype(np.int64)


def is_expanding(formula: Formula, scope: VariableSet, assignment: Assignment, t: float) -> bool:
    """Every variable of ``scope`` supports at least t clauses inside F[scope]."""
    members = sorted(set(scope))
    if not members:
        return True
    support = support_vector(formula, assignment, members)
    return bool((support[members] >= t).all())


def is_self_contained(formula: Formula, scope: VariableSet, r: float) -> bool:
    """Every variable of ``scope`` appears in at most r clauses outside F[scope]."""
    members = sorted(set(scope))
    if not members:
        return True
    return bool((appearance_outside(formula, members)[members] <= r).all())


def _simplify_clause(clause: Clause, assigned: np.ndarray, values: np.ndarray) -> Optional[Clause]:
    """None if satisfied; otherwise the clause without its false literals over ``assigned``."""
    remaining = []
    for lit in clause.literals:
        if assigned[lit.variable]:
            if lit.value_under(bool(values[lit.variable])):
                return None
        else:
            remaining.append(lit)
    if not remaining:
        raise SimplificationConflict(clause)
    return clause if len(remaining) == clause.width else Clause(tuple(remaining))


def simplify_under(formula: AnyFormula, assigned: np.ndarray, values: np.ndarray) -> ResidualFormula:
    """Core of restrict_and_simplify over an assigned-mask and a value vector."""
    if isinstance(formula, Formula) and formula.m:
        variables, negated = formula.matrix
        satisfied = (assigned[variables] & (values[variables] != negated)).any(axis=1)
        candidates = (formula.clauses[i] for i in np.flatnonzero(~satisfied))
    else:
        candidates = iter(formula.clauses)
    out = []
    for clause in candidates:
        simplified = _simplify_clause(clause, assigned, values)
        if simplified is not None:
            out.append(simplified)
    return ResidualFormula(formula.n, tuple(out))


def restrict_and_simplify(formula: AnyFormula, variables: VariableSet, phi: Assignment) -> ResidualFormula:
    """F_out(A, phi): set A according to phi, drop satisfied clauses and false literals.

    Raises SimplificationConflict when a clause loses all its literals.
    """
    _check_length(formula, phi)
    return simplify_under(formula, variable_mask(formula.n, variables), phi.values)


def restrict_partial(formula: AnyFormula, partial: PartialAssignment) -> ResidualFormula:
    """F_out over the assigned part of a partial assignment."""
    _check_length(formula, partial)
    return simplify_under(formula, partial.assigned_mask(), partial.values == TriState.TRUE)
