"""Line-oriented JSON serialization of generation traces.

Line 1 is a header object ({"type": "header", ...}); every further line is one
event: {"clause": [1, -2, 3], "decision": "accepted", "round": 1}.
"""

import json
from typing import Iterable, List, Optional, Tuple

from cnf import Assignment, Clause
from errors import InvalidParametersError
from models import Decision, GenerationTrace, ProcessConfig, TraceEvent


def _bits(assignment: Optional[Assignment]) -> Optional[str]:
    if assignment is None:
        return None
    return "".join("1" if v else "0" for v in assignment.to_list())


def trace_to_jsonl(trace: GenerationTrace, config: Optional[ProcessConfig] = None) -> str:
    header = {
        "type": "header",
        "config": config.to_dict() if config is not None else None,
        "rng_seed": trace.rng_seed,
        "counts": trace.counts(),
        "coin_successes": trace.coin_successes,
        "derived_p": trace.derived_p,
        "witness": _bits(trace.witness),
    }
    lines = [json.dumps(header, sort_keys=True)]
    for event in trace.events:
        lines.append(
            json.dumps(
                {"clause": event.clause.to_dimacs(), "decision": event.decision.value, "round": event.round},
                sort_keys=True,
            )
        )
    return "\n".join(lines) + "\n"


def trace_from_jsonl(lines: Iterable[str]) -> Tuple[dict, GenerationTrace]:
    """Inverse of trace_to_jsonl; returns the raw header alongside the trace."""
    rows = [json.loads(line) for line in lines if line.strip()]
    if not rows or rows[0].get("type") != "header":
        raise InvalidParametersError("trace must start with a header line")
    header = rows[0]
    witness = header.get("witness")
    trace = GenerationTrace(
        rng_seed=header.get("rng_seed", 0),
        coin_successes=header.get("coin_successes"),
        derived_p=header.get("derived_p"),
        witness=Assignment([c == "1" for c in witness]) if witness is not None else None,
    )
    for row in rows[1:]:
        trace.record(Clause.from_dimacs(row["clause"]), Decision(row["decision"]), row.get("round", 1))
    return header, trace
