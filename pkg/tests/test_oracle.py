from itertools import combinations, product
from math import log2

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cnf import Assignment, Formula, satisfies
from errors import InvalidParametersError, OracleLimitError
from oracle import (
    assignment_to_code,
    check_proportional,
    code_to_assignment,
    count_appearances,
    count_solutions,
    dense_count,
    enumerate_solutions,
    filter_codes,
    majority_disagreement,
    solution_codes,
    summarize_solution_space,
)
from process import generate_planted
from strategies import dimacs_formula, formulas

T, F = True, False

# x1 is forced TRUE: with x1 FALSE the remaining four 2-clauses over x2, x3 contradict.
FORCED = [[1, 2, 3], [1, -2, 3], [1, 2, -3], [1, -2, -3]]


def test_empty_formula_has_every_assignment():
    assert count_solutions(Formula(2, 2)) == 4


def test_single_clause_excludes_all_false():
    solutions = enumerate_solutions(dimacs_formula(3, 3, [[1, 2, 3]]))
    assert len(solutions) == 7
    assert Assignment.all_false(3) not in solutions
    assert solutions[0] == Assignment([F, F, T])
    assert solutions[-1] == Assignment.all_true(3)


def test_forced_variable_example():
    solutions = enumerate_solutions(dimacs_formula(3, 3, FORCED))
    assert len(solutions) == 4
    assert all(s[0] for s in solutions)


def test_summary_of_forced_variable_example():
    summary = summarize_solution_space(dimacs_formula(3, 3, FORCED), cluster_link_distance=1)
    assert summary.beta == 4
    assert summary.frozen == {0: True}
    assert summary.concentration_radius == 2
    assert summary.radius_exact
    assert summary.cluster_sizes == [4]
    assert len(summary.clusters[0]) == 4
    assert summary.entropy == pytest.approx(log2(4) / 3)


def test_summary_of_unique_solution():
    formula = generate_planted(3, 3, 7, Assignment.all_true(3), seed=1)
    summary = summarize_solution_space(formula)
    assert summary.beta == 1
    assert summary.frozen == {0: True, 1: True, 2: True}
    assert summary.concentration_radius == 0
    assert summary.frozen_fraction == 1.0


def test_summary_of_empty_formula():
    summary = summarize_solution_space(Formula(3, 3))
    assert summary.beta == 8
    assert summary.frozen == {}
    assert summary.concentration_radius == 3
    assert summary.cluster_sizes == [8]


def test_summary_of_unsatisfiable_formula():
    every = dimacs_formula(3, 3, [[a, b, c] for a in (1, -1) for b in (2, -2) for c in (3, -3)])
    summary = summarize_solution_space(every)
    assert summary.beta == 0
    assert summary.frozen == {}
    assert summary.concentration_radius == 0
    assert summary.entropy is None
    assert summary.to_dict()["clusters"] == []


def test_isolated_solutions_form_separate_clusters():
    # solutions 000 and 111 only: distance 3
    rows = [[a, b, c] for a, b, c in product((1, -1), (2, -2), (3, -3))]
    rows = [r for r in rows if r not in ([1, 2, 3], [-1, -2, -3])]
    summary = summarize_solution_space(dimacs_formula(3, 3, rows), cluster_link_distance=1)
    assert summary.beta == 2
    assert summary.cluster_sizes == [1, 1]
    joined = summarize_solution_space(dimacs_formula(3, 3, rows), cluster_link_distance=3)
    assert joined.cluster_sizes == [2]


def test_sampled_radius_is_flagged_when_not_exact():
    summary = summarize_solution_space(Formula(6, 3), exact_radius_limit=4)
    assert summary.concentration_radius == 6
    # the sweep reaches the free-variable bound, which makes it exact
    assert summary.radius_exact


def test_oracle_refuses_large_n():
    with pytest.raises(OracleLimitError):
        count_solutions(Formula(30, 3))
    with pytest.raises(OracleLimitError):
        count_solutions(Formula(12, 3), limit=10)


@settings(max_examples=60, deadline=None)
@given(formulas(max_n=9, max_m=30))
def test_enumeration_matches_direct_evaluation(formula):
    expected = [
        Assignment(values) for values in product((F, T), repeat=formula.n) if satisfies(formula, Assignment(values))
    ]
    assert enumerate_solutions(formula) == expected


@given(formulas(max_n=8))
def test_summary_clusters_partition_solutions(formula):
    summary = summarize_solution_space(formula)
    assert sum(summary.cluster_sizes) == summary.beta
    assert summary.cluster_sizes == sorted(summary.cluster_sizes, reverse=True)
    for v, value in summary.frozen.items():
        assert all(s[v] == value for cluster in summary.clusters for s in cluster)


def test_codes_put_the_first_variable_first():
    assert assignment_to_code(Assignment([T, F, F])) == 4
    assert code_to_assignment(1, 3) == Assignment([F, F, T])


def test_filter_codes_keeps_order():
    codes = np.arange(8, dtype=np.int64)
    kept = filter_codes(codes, dimacs_formula(3, 3, [[1, 2, 3]]).clauses, 3)
    assert kept.tolist() == list(range(1, 8))
    assert solution_codes(dimacs_formula(3, 3, [[1, 2, 3]])).tolist() == list(range(1, 8))


def test_count_appearances():
    formula = dimacs_formula(3, 3, [[1, 2, 3], [-1, 2, 3]])
    assert count_appearances(formula, 0) == (1, 1)
    assert count_appearances(formula, 1) == (2, 0)
    assert count_appearances(Formula(3, 3), 2) == (0, 0)


def test_majority_disagreement_is_the_farthest_solution():
    formula = dimacs_formula(3, 3, FORCED)
    # MAJ = (T, F, F); the farthest solution is all-TRUE
    assert majority_disagreement(formula) == 2
    assert majority_disagreement(formula, solutions=[Assignment([T, F, F])]) == 0


def test_majority_disagreement_without_solutions():
    every = dimacs_formula(3, 3, [[a, b, c] for a in (1, -1) for b in (2, -2) for c in (3, -3)])
    assert majority_disagreement(every) is None


def test_empty_formula_is_proportional():
    report = check_proportional(Formula(6, 3), rho=0.5, size_cap=6)
    assert report.proportional
    assert report.exhaustive


def test_dense_pair_violates_proportionality():
    formula = dimacs_formula(5, 3, [[1, 2, 3], [1, 2, 4], [1, 2, 5]])
    report = check_proportional(formula, rho=1, size_cap=2)
    assert not report.proportional
    assert report.violating_set == frozenset({0, 1})
    assert report.violating_count == 3
    assert dense_count(formula, {0, 1}) == 3


def test_no_violation_at_higher_rho():
    formula = dimacs_formula(5, 3, [[1, 2, 3], [1, 2, 4], [1, 2, 5]])
    report = check_proportional(formula, rho=2, size_cap=5)
    assert report.proportional
    assert report.exhaustive


def test_greedy_search_beyond_the_exhaustive_limit():
    formula = dimacs_formula(5, 3, [[1, 2, 3], [1, 2, 4], [1, 2, 5]])
    report = check_proportional(formula, rho=1, size_cap=4, exhaustive_limit=1)
    assert not report.exhaustive
    assert report.violating_set is not None
    assert report.violating_count >= len(report.violating_set)


def test_proportionality_needs_positive_rho():
    with pytest.raises(InvalidParametersError):
        check_proportional(Formula(4, 3), rho=0, size_cap=2)


@settings(max_examples=40, deadline=None)
@given(formulas(max_n=7, max_m=20))
def test_reported_violations_are_real(formula):
    report = check_proportional(formula, rho=1, size_cap=formula.n)
    if report.violating_set is not None:
        assert dense_count(formula, report.violating_set) >= len(report.violating_set)
    else:
        assert report.exhaustive


def _has_dense_subset(formula, rho, size_cap):
    return any(
        dense_count(formula, subset) >= rho * size
        for size in range(2, size_cap + 1)
        for subset in combinations(range(formula.n), size)
    )


@settings(max_examples=30, deadline=None)
@given(formulas(min_n=4, max_n=14, max_m=30), st.sampled_from([1.0, 1.5, 2.0]))
def test_proportionality_matches_subset_enumeration(formula, rho):
    report = check_proportional(formula, rho=rho, size_cap=formula.n)
    assert report.exhaustive
    assert (report.violating_set is not None) == _has_dense_subset(formula, rho, formula.n)
