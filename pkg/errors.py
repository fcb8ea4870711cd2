"""Exception hierarchy shared by every package."""

from typing import Optional


class KSatError(Exception):
    """Base class for all errors raised by the toolkit."""


class InvalidParametersError(KSatError, ValueError):
    """A parameter combination makes the request meaningless (e.g. k > n, m > M)."""


class IndexRangeError(KSatError, IndexError):
    """An index or count falls outside its valid range (clause index, variable, overflow)."""


class ContractViolationError(KSatError):
    """A documented precondition of an operation does not hold."""


class OracleLimitError(KSatError):
    """Brute-force analysis refused because n exceeds the configured limit."""


class DimacsParseError(KSatError, ValueError):
    """Malformed DIMACS input; carries the 1-based line number of the problem."""

    def __init__(self, message: str, line_number: Optional[int] = None) -> None:
        self.line_number = line_number
        where = f"line {line_number}: " if line_number is not None else ""
        super().__init__(f"{where}{message}")


class SimplificationConflict(KSatError):
    """Assigning a variable set emptied a clause.

    Raised by restrict_and_simplify and unit propagation; ``clause`` is the
    clause (in its original form) whose literals were all falsified.
    """

    def __init__(self, clause: object, message: str = "empty clause derived") -> None:
        self.clause = clause
        super().__init__(f"{message}: {clause}")
