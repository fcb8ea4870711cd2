"""Brute-force ground truth over the solution space of small formulas."""

from .appearances import count_appearances, majority_disagreement
from .enumerate import (
    assignment_to_code,
    check_oracle_limit,
    code_to_assignment,
    count_solutions,
    enumerate_solutions,
    filter_codes,
    solution_codes,
)
from .proportional import check_proportional, dense_count
from .summary import concentration_radius, frozen_variables, summarize_codes, summarize_solution_space

__all__ = [
    "count_appearances",
    "majority_disagreement",
    "assignment_to_code",
    "check_oracle_limit",
    "code_to_assignment",
    "count_solutions",
    "enumerate_solutions",
    "filter_codes",
    "solution_codes",
    "check_proportional",
    "dense_count",
    "concentration_radius",
    "frozen_variables",
    "summarize_codes",
    "summarize_solution_space",
]
