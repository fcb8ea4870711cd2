"""Planted baseline: m clauses drawn uniformly from those satisfied by a fixed assignment."""

from typing import List

from cnf import Assignment, Clause, Formula, Literal, get_indexer
from errors import InvalidParametersError

from .rng import make_rng
from .sampling import floyd_sample


def planted_universe_size(n: int, k: int) -> int:
    """(2^k - 1) * C(n, k): each variable tuple loses only its falsified sign pattern."""
    return ((1 << k) - 1) * (get_indexer(n, k).size >> k)


def _planted_clause(index: int, n: int, k: int, psi: Assignment) -> Clause:
    indexer = get_indexer(n, k)
    rank, offset = divmod(index, (1 << k) - 1)
    variables = indexer.from_index(rank << k).variables
    # the unique pattern falsified by psi negates exactly the TRUE variables
    falsified = sum(1 << i for i, v in enumerate(variables) if psi[v])
    bits = offset if offset < falsified else offset + 1
    return Clause(tuple(Literal(v, not (bits >> i) & 1) for i, v in enumerate(variables)))


def generate_planted(n: int, k: int, m: int, psi: Assignment, seed: int) -> Formula:
    """m distinct clauses satisfied by ``psi``, uniformly without replacement, random order."""
    if len(psi) != n:
        raise InvalidParametersError(f"planted assignment has length {len(psi)}, expected {n}")
    size = planted_universe_size(n, k)
    if not 0 <= m <= size:
        raise InvalidParametersError(f"m={m} exceeds the {size} clauses satisfied by the planted assignment")
    rng = make_rng(seed)
    indices: List[int] = floyd_sample(size, m, rng)
    return Formula(n, k, tuple(_planted_clause(i, n, k, psi) for i in indices))
