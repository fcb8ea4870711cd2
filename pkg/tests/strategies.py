"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from cnf import Assignment, Clause, Formula, clause_from_index, clause_universe_size


def dimacs_formula(n, k, rows):
    """Formula from 1-based signed rows, e.g. ``[[1, -2, 3]]``."""
    return Formula(n, k, tuple(Clause.from_dimacs(r) for r in rows))


@st.composite
def formulas(draw, min_n=3, max_n=8, k=3, max_m=24):
    n = draw(st.integers(min_value=max(min_n, k), max_value=max_n))
    size = clause_universe_size(n, k)
    indices = draw(
        st.lists(st.integers(min_value=0, max_value=size - 1), unique=True, max_size=min(max_m, size))
    )
    return Formula(n, k, tuple(clause_from_index(i, n, k) for i in indices))


@st.composite
def formulas_with_assignment(draw, **kwargs):
    formula = draw(formulas(**kwargs))
    values = draw(st.lists(st.booleans(), min_size=formula.n, max_size=formula.n))
    return formula, Assignment(values)


@st.composite
def planted_formulas(draw, min_n=4, max_n=9, k=3, max_m=30):
    """A formula together with an assignment that satisfies it."""
    n = draw(st.integers(min_value=max(min_n, k), max_value=max_n))
    psi = Assignment(draw(st.lists(st.booleans(), min_size=n, max_size=n)))
    size = clause_universe_size(n, k)
    indices = draw(
        st.lists(st.integers(min_value=0, max_value=size - 1), unique=True, max_size=min(max_m, size))
    )
    clauses = []
    for i in indices:
        clause = clause_from_index(i, n, k)
        if any(lit.value_under(psi[lit.variable]) for lit in clause.literals):
            clauses.append(clause)
    return Formula(n, k, tuple(clauses)), psi
