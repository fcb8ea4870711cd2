"""Literals, clauses and the canonical clause-index encoding.

Every width-k clause over n variables with distinct variables has an index in
[0, M), M = 2^k * C(n, k):

    index = colex_rank(v_0 < v_1 < ... < v_{k-1}) * 2^k + polarity_bits

where colex_rank = sum_i C(v_i, i + 1) and bit i of polarity_bits is set iff
the literal over v_i is negated. Sampling indices is therefore the same as
sampling clauses, and the process never materializes the clause universe.
"""

from bisect import bisect_right
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterable, List, Sequence, Tuple

from errors import IndexRangeError, InvalidParametersError

# Indices are handed to numpy as int64.
MAX_UNIVERSE = (1 << 63) - 1


@dataclass(frozen=True, order=True)
class Literal:
    """A variable (0-based) with a polarity."""

    variable: int
    positive: bool = True

    def __neg__(self) -> "Literal":
        return Literal(self.variable, not self.positive)

    def value_under(self, variable_value: bool) -> bool:
        """Truth value of the literal when its variable takes ``variable_value``."""
        return variable_value if self.positive else not variable_value

    def to_dimacs(self) -> int:
        return self.variable + 1 if self.positive else -(self.variable + 1)

    @classmethod
    def from_dimacs(cls, token: int) -> "Literal":
        if token == 0:
            raise InvalidParametersError("DIMACS literal 0 is the clause terminator")
        return cls(abs(token) - 1, token > 0)

    def __str__(self) -> str:
        return f"x{self.variable + 1}" if self.positive else f"~x{self.variable + 1}"


@dataclass(frozen=True)
class Clause:
    """Disjunction of literals over distinct variables, stored in ascending variable order."""

    literals: Tuple[Literal, ...]

    def __post_init__(self) -> None:
        lits = tuple(sorted(self.literals, key=lambda lit: lit.variable))
        variables = [lit.variable for lit in lits]
        if len(set(variables)) != len(variables):
            raise InvalidParametersError(
                f"clause repeats a variable: {[lit.to_dimacs() for lit in self.literals]}"
            )
        if any(v < 0 for v in variables):
            raise IndexRangeError("negative variable index in clause")
        object.__setattr__(self, "literals", lits)

    @classmethod
    def of(cls, *literals: Literal) -> "Clause":
        return cls(tuple(literals))

    @classmethod
    def from_dimacs(cls, tokens: Iterable[int]) -> "Clause":
        """Build from 1-based signed integers, e.g. ``Clause.from_dimacs([1, -2, 3])``."""
        return cls(tuple(Literal.from_dimacs(t) for t in tokens))

    @property
    def width(self) -> int:
        return len(self.literals)

    @property
    def variables(self) -> Tuple[int, ...]:
        return tuple(lit.variable for lit in self.literals)

    def literal_of(self, variable: int) -> Literal:
        for lit in self.literals:
            if lit.variable == variable:
                return lit
        raise KeyError(variable)

    def to_dimacs(self) -> List[int]:
        return [lit.to_dimacs() for lit in self.literals]

    def __len__(self) -> int:
        return len(self.literals)

    def __iter__(self):
        return iter(self.literals)

    def __str__(self) -> str:
        return "(" + " v ".join(str(lit) for lit in self.literals) + ")"


def clause_universe_size(n: int, k: int) -> int:
    """M = 2^k * C(n, k), the number of width-k clauses with distinct variables."""
    if k < 1 or n < 1:
        raise InvalidParametersError(f"need 1 <= k <= n, got n={n}, k={k}")
    if k > n:
        raise InvalidParametersError(f"clause width k={k} exceeds variable count n={n}")
    size = (1 << k) * comb(n, k)
    if size > MAX_UNIVERSE:
        raise IndexRangeError(f"clause universe 2^{k}*C({n},{k}) does not fit a 64-bit index")
    return size


class ClauseIndexer:
    """Bijection between [0, M) and the width-k clauses over n variables."""

    def __init__(self, n: int, k: int) -> None:
        self.n = n
        self.k = k
        self.size = clause_universe_size(n, k)
        # _table[i][c] = C(c, i); nondecreasing in c, so bisect unranks a position
        self._table = [[comb(c, i) for c in range(n)] for i in range(k + 1)]

    def to_index(self, clause: Clause) -> int:
        if clause.width != self.k:
            raise InvalidParametersError(f"clause width {clause.width} != k={self.k}")
        rank = 0
        bits = 0
        for i, lit in enumerate(clause.literals):
            if lit.variable >= self.n:
                raise IndexRangeError(f"variable {lit.variable} >= n={self.n}")
            rank += self._table[i + 1][lit.variable]
            if not lit.positive:
                bits |= 1 << i
        return (rank << self.k) | bits

    def from_index(self, idx: int) -> Clause:
        idx = int(idx)
        if not 0 <= idx < self.size:
            raise IndexRangeError(f"clause index {idx} outside [0, {self.size})")
        rank, bits = idx >> self.k, idx & ((1 << self.k) - 1)
        variables = [0] * self.k
        for i in range(self.k, 0, -1):
            v = bisect_right(self._table[i], rank) - 1
            variables[i - 1] = v
            rank -= self._table[i][v]
        return Clause(
            tuple(Literal(v, not (bits >> i) & 1) for i, v in enumerate(variables))
        )

    def from_indices(self, indices: Sequence[int]) -> List[Clause]:
        return [self.from_index(i) for i in indices]


@lru_cache(maxsize=32)
def get_indexer(n: int, k: int) -> ClauseIndexer:
    return ClauseIndexer(n, k)


def clause_from_index(idx: int, n: int, k: int) -> Clause:
    """Clause with canonical index ``idx`` in the (n, k) universe."""
    return get_indexer(n, k).from_index(idx)


def clause_to_index(clause: Clause, n: int, k: int) -> int:
    """Inverse of clause_from_index."""
    return get_indexer(n, k).to_index(clause)
