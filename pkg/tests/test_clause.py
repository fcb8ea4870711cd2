from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cnf import Clause, Literal, clause_from_index, clause_to_index, clause_universe_size, get_indexer
from errors import IndexRangeError, InvalidParametersError


@pytest.mark.parametrize("n,k,size", [(4, 3, 32), (3, 3, 8), (100, 3, 1293600), (5, 1, 10)])
def test_universe_size(n, k, size):
    assert clause_universe_size(n, k) == size


def test_universe_rejects_width_above_n():
    with pytest.raises(InvalidParametersError):
        clause_universe_size(2, 3)


def test_universe_overflow_is_an_index_error():
    with pytest.raises(IndexRangeError):
        clause_universe_size(10**6, 20)


def test_first_indices_follow_colex_then_polarity():
    assert clause_from_index(0, 4, 3) == Clause.from_dimacs([1, 2, 3])
    assert clause_from_index(1, 4, 3) == Clause.from_dimacs([-1, 2, 3])
    assert clause_from_index(7, 4, 3) == Clause.from_dimacs([-1, -2, -3])
    assert clause_from_index(8, 4, 3) == Clause.from_dimacs([1, 2, 4])
    assert clause_from_index(31, 4, 3) == Clause.from_dimacs([-2, -3, -4])


@pytest.mark.parametrize("n,k", [(n, k) for k in (1, 2, 3, 4) for n in range(k, 13)])
def test_index_is_a_bijection(n, k):
    indexer = get_indexer(n, k)
    clauses = [indexer.from_index(i) for i in range(indexer.size)]
    assert len(set(clauses)) == indexer.size
    for i, clause in enumerate(clauses):
        assert clause.width == k
        assert list(clause.variables) == sorted(set(clause.variables))
        assert indexer.to_index(clause) == i


def test_every_clause_of_the_universe_has_an_index():
    n, k = 5, 3
    seen = set()
    for variables in ((a, b, c) for a in range(n) for b in range(a + 1, n) for c in range(b + 1, n)):
        for signs in product((True, False), repeat=k):
            clause = Clause(tuple(Literal(v, s) for v, s in zip(variables, signs)))
            seen.add(clause_to_index(clause, n, k))
    assert seen == set(range(clause_universe_size(n, k)))


@given(st.integers(min_value=3, max_value=400), st.data())
def test_large_universe_indices_stay_in_range(n, data):
    size = clause_universe_size(n, 3)
    idx = data.draw(st.integers(min_value=0, max_value=size - 1))
    clause = clause_from_index(idx, n, 3)
    assert clause.literals[-1].variable < n
    assert clause_to_index(clause, n, 3) == idx


@pytest.mark.parametrize("idx", [-1, 32, 10**9])
def test_out_of_range_index(idx):
    with pytest.raises(IndexRangeError):
        clause_from_index(idx, 4, 3)


def test_clause_rejects_repeated_variable():
    with pytest.raises(InvalidParametersError):
        Clause.from_dimacs([1, -1, 2])


def test_clause_canonical_order_and_dimacs():
    clause = Clause.of(Literal(2), Literal(0, False), Literal(1))
    assert clause.variables == (0, 1, 2)
    assert clause.to_dimacs() == [-1, 2, 3]
    assert str(clause) == "(~x1 v x2 v x3)"
    assert -Literal(4) == Literal(4, False)


def test_to_index_checks_width_and_range():
    with pytest.raises(InvalidParametersError):
        clause_to_index(Clause.from_dimacs([1, 2]), 4, 3)
    with pytest.raises(IndexRangeError):
        clause_to_index(Clause.from_dimacs([1, 2, 9]), 4, 3)
