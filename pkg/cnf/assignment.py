"""Total and partial truth assignments."""

from enum import IntEnum
from typing import Iterable, List, Optional, Sequence

import numpy as np

from errors import ContractViolationError, InvalidParametersError


class TriState(IntEnum):
    UNASSIGNED = -1
    FALSE = 0
    TRUE = 1


def _frozen(array: np.ndarray) -> np.ndarray:
    array.flags.writeable = False
    return array


class Assignment:
    """Immutable boolean vector of length n (index = variable)."""

    __slots__ = ("_values",)

    def __init__(self, values: Iterable[bool]) -> None:
        arr = np.array(values if isinstance(values, np.ndarray) else list(values), dtype=bool)
        if arr.ndim != 1:
            raise InvalidParametersError("assignment must be one-dimensional")
        self._values = _frozen(arr.copy())

    @classmethod
    def all_false(cls, n: int) -> "Assignment":
        return cls(np.zeros(n, dtype=bool))

    @classmethod
    def all_true(cls, n: int) -> "Assignment":
        return cls(np.ones(n, dtype=bool))

    @classmethod
    def from_bits(cls, bits: int, n: int) -> "Assignment":
        """Variable i takes bit i of ``bits``."""
        return cls(np.array([(bits >> i) & 1 for i in range(n)], dtype=bool))

    @classmethod
    def from_dimacs_model(cls, model: Sequence[int], n: int) -> "Assignment":
        values = np.zeros(n, dtype=bool)
        for lit in model:
            if 0 < abs(lit) <= n:
                values[abs(lit) - 1] = lit > 0
        return cls(values)

    @property
    def values(self) -> np.ndarray:
        """Read-only numpy view."""
        return self._values

    @property
    def n(self) -> int:
        return len(self._values)

    def to_bits(self) -> int:
        return sum(1 << i for i, v in enumerate(self._values) if v)

    def flipped(self, variables: Iterable[int]) -> "Assignment":
        values = self._values.copy()
        idx = np.fromiter(variables, dtype=np.int64)
        values[idx] = ~values[idx]
        return Assignment(values)

    def with_values(self, updates: dict) -> "Assignment":
        values = self._values.copy()
        for var, val in updates.items():
            values[var] = bool(val)
        return Assignment(values)

    def to_list(self) -> List[bool]:
        return [bool(v) for v in self._values]

    def true_variables(self) -> List[int]:
        return [int(i) for i in np.flatnonzero(self._values)]

    def __len__(self) -> int:
        return len(self._values)

    def __getitem__(self, variable: int) -> bool:
        return bool(self._values[variable])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Assignment):
            return NotImplemented
        return np.array_equal(self._values, other._values)

    def __hash__(self) -> int:
        return hash(self._values.tobytes())

    def __repr__(self) -> str:
        return "Assignment(" + "".join("1" if v else "0" for v in self._values) + ")"


def hamming_distance(a: Assignment, b: Assignment) -> int:
    if len(a) != len(b):
        raise InvalidParametersError("assignments of different length")
    return int(np.count_nonzero(a.values != b.values))


class PartialAssignment:
    """Immutable tri-state vector of length n; values are TriState codes (int8)."""

    __slots__ = ("_values",)

    def __init__(self, values: Iterable[int]) -> None:
        arr = np.array(values if isinstance(values, np.ndarray) else list(values), dtype=np.int8)
        if arr.ndim != 1 or np.any((arr < -1) | (arr > 1)):
            raise InvalidParametersError("partial assignment entries must be -1, 0 or 1")
        self._values = _frozen(arr.copy())

    @classmethod
    def unassigned(cls, n: int) -> "PartialAssignment":
        return cls(np.full(n, TriState.UNASSIGNED, dtype=np.int8))

    @classmethod
    def from_assignment(cls, assignment: Assignment, assigned: Optional[Iterable[int]] = None) -> "PartialAssignment":
        values = assignment.values.astype(np.int8)
        if assigned is not None:
            mask = np.zeros(len(values), dtype=bool)
            mask[list(assigned)] = True
            values[~mask] = TriState.UNASSIGNED
        return cls(values)

    @property
    def values(self) -> np.ndarray:
        return self._values

    @property
    def n(self) -> int:
        return len(self._values)

    def state(self, variable: int) -> TriState:
        return TriState(int(self._values[variable]))

    def is_assigned(self, variable: int) -> bool:
        return self._values[variable] != TriState.UNASSIGNED

    def value(self, variable: int) -> bool:
        if not self.is_assigned(variable):
            raise ContractViolationError(f"variable {variable} is unassigned")
        return bool(self._values[variable])

    def assigned_mask(self) -> np.ndarray:
        return self._values != TriState.UNASSIGNED

    def assigned_variables(self) -> List[int]:
        return [int(i) for i in np.flatnonzero(self.assigned_mask())]

    def unassigned_variables(self) -> List[int]:
        return [int(i) for i in np.flatnonzero(~self.assigned_mask())]

    def with_values(self, updates: dict) -> "PartialAssignment":
        values = self._values.copy()
        for var, val in updates.items():
            values[var] = TriState.UNASSIGNED if val is None else int(bool(val))
        return PartialAssignment(values)

    def completed(self, default: bool = False) -> Assignment:
        """Total assignment with every unassigned variable set to ``default``."""
        values = self._values.copy()
        values[values == TriState.UNASSIGNED] = int(default)
        return Assignment(values.astype(bool))

    def extends_to(self, assignment: Assignment) -> bool:
        """True if ``assignment`` agrees with every assigned variable."""
        mask = self.assigned_mask()
        return bool(np.array_equal(self._values[mask].astype(bool), assignment.values[mask]))

    def __len__(self) -> int:
        return len(self._values)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PartialAssignment):
            return NotImplemented
        return np.array_equal(self._values, other._values)

    def __hash__(self) -> int:
        return hash(self._values.tobytes())

    def __repr__(self) -> str:
        symbols = {-1: "*", 0: "0", 1: "1"}
        return "PartialAssignment(" + "".join(symbols[int(v)] for v in self._values) + ")"
