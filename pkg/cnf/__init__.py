"""Formula module: literals, clauses, formulas, assignments, simplification, DIMACS."""

from .assignment import Assignment, PartialAssignment, TriState, hamming_distance
from .clause import (
    Clause,
    ClauseIndexer,
    Literal,
    clause_from_index,
    clause_to_index,
    clause_universe_size,
    get_indexer,
)
from .dimacs import dimacs_read, dimacs_write
from .formula import (
    AnyFormula,
    Formula,
    FormulaBuilder,
    ResidualFormula,
    appearance_counts,
    appearance_outside,
    evaluate,
    falsified_clauses,
    induced_subformula,
    inside_mask,
    is_expanding,
    is_self_contained,
    restrict_and_simplify,
    restrict_partial,
    satisfies,
    support_count,
    support_count_partial,
    support_vector,
    support_vector_partial,
    variable_mask,
)
from .graph import clause_components, connected_components, induced_graph

__all__ = [
    "Assignment",
    "PartialAssignment",
    "TriState",
    "hamming_distance",
    "Clause",
    "ClauseIndexer",
    "Literal",
    "clause_from_index",
    "clause_to_index",
    "clause_universe_size",
    "get_indexer",
    "dimacs_read",
    "dimacs_write",
    "AnyFormula",
    "Formula",
    "FormulaBuilder",
    "ResidualFormula",
    "appearance_counts",
    "appearance_outside",
    "evaluate",
    "falsified_clauses",
    "induced_subformula",
    "inside_mask",
    "is_expanding",
    "is_self_contained",
    "restrict_and_simplify",
    "restrict_partial",
    "satisfies",
    "support_count",
    "support_count_partial",
    "support_vector",
    "support_vector_partial",
    "variable_mask",
    "clause_components",
    "connected_components",
    "induced_graph",
]
