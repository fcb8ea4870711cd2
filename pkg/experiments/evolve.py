"""Snapshots of a restricted process as clauses are scanned."""

import logging
from typing import List, Optional, Sequence

import numpy as np

from models import Decision, EvolveSnapshot, GenerationTrace, ProcessConfig, Variant
from oracle import check_oracle_limit, filter_codes, summarize_codes
from process import generate_perm_process

logger = logging.getLogger(__name__)


def evolve(
    n: int,
    k: int,
    seed: int,
    snapshots: Sequence[int],
    oracle: bool = True,
    oracle_limit: Optional[int] = None,
    checker: str = "auto",
) -> List[EvolveSnapshot]:
    """Run the permutation process to max(snapshots) and report each snapshot."""
    points = sorted(set(int(m) for m in snapshots))
    if not points:
        return []
    if oracle:
        check_oracle_limit(n, oracle_limit)
    config = ProcessConfig(n=n, k=k, variant=Variant.PERM_M, m=points[-1], seed=seed, checker=checker)
    _, trace = generate_perm_process(config)
    return trace_snapshots(trace, n, points, oracle=oracle, oracle_limit=oracle_limit)


def trace_snapshots(
    trace: GenerationTrace,
    n: int,
    snapshots: Sequence[int],
    oracle: bool = True,
    oracle_limit: Optional[int] = None,
) -> List[EvolveSnapshot]:
    """Process state after the first m scanned clauses of an existing trace.

    Oracle columns follow the solution set along the trace; it is filtered
    clause by clause, so enumeration happens once.
    """
    points = sorted(set(int(m) for m in snapshots))
    if oracle:
        check_oracle_limit(n, oracle_limit)
    scanned = [e for e in trace.events if e.decision is not Decision.NOT_DRAWN]
    codes = np.arange(1 << n, dtype=np.int64) if oracle else None
    out: List[EvolveSnapshot] = []
    accepted = rejected = 0
    position = 0
    for m in points:
        new_clauses = []
        for event in scanned[position:m]:
            if event.decision is Decision.ACCEPTED:
                accepted += 1
                new_clauses.append(event.clause)
            else:
                rejected += 1
        position = m
        snap = EvolveSnapshot(m=m, ratio=m / n, accepted=accepted, rejected=rejected)
        if codes is not None:
            codes = filter_codes(codes, new_clauses, n)
            summary = summarize_codes(codes, n, materialize=False)
            snap.beta = summary.beta
            snap.frozen_fraction = summary.frozen_fraction
            snap.radius = summary.concentration_radius
            snap.entropy = summary.entropy
            snap.clusters = len(summary.cluster_sizes)
        out.append(snap)
        logger.debug("m=%d accepted=%d rejected=%d beta=%s", m, accepted, rejected, snap.beta)
    return out


def frozen_monotone(snapshots: Sequence[EvolveSnapshot]) -> bool:
    """Frozen fraction never decreases along the snapshots."""
    fractions = [s.frozen_fraction for s in snapshots if s.frozen_fraction is not None]
    return all(a <= b for a, b in zip(fractions, fractions[1:]))


def snapshots_at_ratios(n: int, ratios: Sequence[float]) -> List[int]:
    return sorted({int(round(r * n)) for r in ratios})
