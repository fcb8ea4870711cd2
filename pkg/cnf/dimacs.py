"""DIMACS CNF reading and writing."""

import logging
from typing import Iterable, List, Optional, Tuple

from errors import DimacsParseError, InvalidParametersError, KSatError

from .clause import Clause, Literal
from .formula import AnyFormula, Formula, ResidualFormula

logger = logging.getLogger(__name__)


def _tokens(text: str) -> Iterable[Tuple[int, str]]:
    for line_number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("c"):
            continue
        if stripped.startswith("%"):
            # SATLIB end marker
            return
        for token in stripped.split():
            yield line_number, token


def dimacs_read(
    text: str,
    k: Optional[int] = None,
    strict_width: bool = False,
    strict_distinct: bool = True,
) -> AnyFormula:
    """Parse DIMACS CNF text.

    Returns a Formula when every clause has the same width (``k`` if given),
    otherwise a ResidualFormula; with ``strict_width`` a clause of width != k is
    a parse error. With ``strict_distinct`` a repeated variable inside a clause
    is a parse error; without it, repeated identical literals are merged.
    """
    tokens = iter(_tokens(text))
    header = None
    for line_number, token in tokens:
        if token != "p":
            raise DimacsParseError(f"expected 'p cnf' header, found {token!r}", line_number)
        try:
            fmt = next(tokens)
            n_tok = next(tokens)
            m_tok = next(tokens)
        except StopIteration:
            raise DimacsParseError("truncated header", line_number) from None
        if fmt[1] != "cnf":
            raise DimacsParseError(f"unsupported format {fmt[1]!r}", fmt[0])
        try:
            header = (int(n_tok[1]), int(m_tok[1]))
        except ValueError:
            raise DimacsParseError("header counts must be integers", line_number) from None
        break
    if header is None:
        raise DimacsParseError("missing 'p cnf' header")
    n, declared_m = header
    if n < 0 or declared_m < 0:
        raise DimacsParseError("negative header count", 1)

    clauses: List[Tuple[int, Clause]] = []
    current: List[int] = []
    start_line = None
    for line_number, token in tokens:
        try:
            value = int(token)
        except ValueError:
            raise DimacsParseError(f"invalid literal {token!r}", line_number) from None
        if start_line is None:
            start_line = line_number
        if value == 0:
            clauses.append((start_line, _make_clause(current, n, start_line, strict_distinct)))
            current = []
            start_line = None
            continue
        current.append(value)
    if current:
        raise DimacsParseError("last clause is not terminated by 0", start_line)
    if len(clauses) != declared_m:
        logger.warning("DIMACS header declares %d clauses, found %d", declared_m, len(clauses))

    if not clauses:
        return Formula(n, k or 3)
    widths = {c.width for _, c in clauses}
    expected = k if k is not None else (widths.pop() if len(widths) == 1 else None)
    if strict_width:
        if expected is None:
            raise DimacsParseError("mixed clause widths and no k given")
        for line_number, clause in clauses:
            if clause.width != expected:
                raise DimacsParseError(f"clause width {clause.width} != k={expected}", line_number)
    if expected is not None and all(c.width == expected for _, c in clauses):
        try:
            return Formula(n, expected, tuple(c for _, c in clauses))
        except InvalidParametersError as exc:
            raise DimacsParseError(str(exc)) from exc
    return ResidualFormula(n, tuple(c for _, c in clauses))


def _make_clause(tokens: List[int], n: int, line_number: int, strict_distinct: bool) -> Clause:
    if not tokens:
        raise DimacsParseError("empty clause", line_number)
    if any(abs(t) > n for t in tokens):
        raise DimacsParseError(f"literal exceeds declared variable count {n}", line_number)
    if not strict_distinct:
        tokens = list(dict.fromkeys(tokens))
    try:
        return Clause(tuple(Literal.from_dimacs(t) for t in tokens))
    except KSatError as exc:
        raise DimacsParseError(str(exc), line_number) from exc


def dimacs_write(formula: AnyFormula, comments: Iterable[str] = ()) -> str:
    """Serialize to DIMACS; clause order and canonical literal order are preserved."""
    lines = [f"c {c}" for c in comments]
    lines.append(f"p cnf {formula.n} {len(formula.clauses)}")
    for clause in formula.clauses:
        lines.append(" ".join(str(t) for t in clause.to_dimacs()) + " 0")
    return "\n".join(lines) + "\n"
