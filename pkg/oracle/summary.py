"""Solution-space summary: beta, frozen variables, concentration radius, clusters."""

import logging
from itertools import combinations
from math import log2
from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components as sparse_components

from cnf import Assignment
from cnf.formula import AnyFormula
from config import get_config
from models import SolutionSpaceSummary

from .enumerate import codes_to_matrix, solution_codes

logger = logging.getLogger(__name__)

# Materialize per-cluster Assignment lists only up to this many solutions.
MATERIALIZE_LIMIT = 1 << 16
_BLOCK = 1 << 8


def frozen_variables(codes: np.ndarray, n: int) -> Dict[int, bool]:
    """Variables taking one value across every code (empty when there are no codes)."""
    if codes.size == 0:
        return {}
    ones = np.bitwise_and.reduce(codes)
    anys = np.bitwise_or.reduce(codes)
    frozen = {}
    for v in range(n):
        bit = 1 << (n - 1 - v)
        if (ones & bit) == (anys & bit):
            frozen[v] = bool(ones & bit)
    return frozen


def _max_distance_exact(codes: np.ndarray) -> int:
    best = 0
    for start in range(0, codes.size, _BLOCK):
        block = codes[start:start + _BLOCK]
        dist = np.bitwise_count(block[:, None] ^ codes[None, :])
        best = max(best, int(dist.max()))
    return best


def _max_distance_sweep(codes: np.ndarray, sweeps: int = 8) -> int:
    """Lower bound from repeated farthest-point sweeps."""
    current = int(codes[0])
    best = 0
    for _ in range(sweeps):
        dist = np.bitwise_count(codes ^ current)
        far = int(dist.argmax())
        if int(dist[far]) <= best:
            break
        best = int(dist[far])
        current = int(codes[far])
    return best


def concentration_radius(codes: np.ndarray, free_variables: int, exact_limit: int) -> Tuple[int, bool]:
    """Max pairwise Hamming distance and whether it is exact.

    Frozen bits never differ, so the number of free variables bounds the radius;
    a sweep reaching that bound is exact as well.
    """
    if codes.size <= 1:
        return 0, True
    if codes.size <= exact_limit:
        return _max_distance_exact(codes), True
    bound = _max_distance_sweep(codes)
    return bound, bound == free_variables


def _flip_masks(free: List[int], n: int, distance: int) -> List[int]:
    masks = []
    for d in range(1, distance + 1):
        for combo in combinations(free, d):
            masks.append(sum(1 << (n - 1 - v) for v in combo))
    return masks


def cluster_labels(codes: np.ndarray, n: int, free: List[int], link_distance: int) -> Tuple[int, np.ndarray]:
    """Components of the graph joining solutions at Hamming distance <= link_distance."""
    size = codes.size
    rows, cols = [], []
    for mask in _flip_masks(free, n, link_distance):
        neighbours = codes ^ mask
        pos = np.searchsorted(codes, neighbours)
        pos_clipped = np.minimum(pos, size - 1)
        hit = codes[pos_clipped] == neighbours
        rows.append(np.flatnonzero(hit))
        cols.append(pos_clipped[hit])
    if rows:
        r = np.concatenate(rows)
        c = np.concatenate(cols)
    else:
        r = c = np.zeros(0, dtype=np.int64)
    graph = coo_matrix((np.ones(r.size, dtype=np.int8), (r, c)), shape=(size, size))
    return sparse_components(graph, directed=False)


def summarize_codes(
    codes: np.ndarray,
    n: int,
    cluster_link_distance: int = 1,
    exact_radius_limit: Optional[int] = None,
    materialize: bool = True,
) -> SolutionSpaceSummary:
    settings = get_config().oracle
    exact_limit = exact_radius_limit if exact_radius_limit is not None else settings.exact_radius_limit
    beta = int(codes.size)
    if beta == 0:
        return SolutionSpaceSummary(
            n=n, beta=0, frozen={}, concentration_radius=0, entropy=None, clusters=[], cluster_sizes=[]
        )
    frozen = frozen_variables(codes, n)
    free = [v for v in range(n) if v not in frozen]
    radius, exact = concentration_radius(codes, len(free), exact_limit)
    count, labels = cluster_labels(codes, n, free, cluster_link_distance)
    members = [np.flatnonzero(labels == i) for i in range(count)]
    # largest first, ties by smallest (lexicographically least) member
    members.sort(key=lambda idx: (-idx.size, int(idx[0])))
    sizes = [int(idx.size) for idx in members]
    clusters: List[List[Assignment]] = []
    if materialize and beta <= MATERIALIZE_LIMIT:
        matrix = codes_to_matrix(codes, n)
        clusters = [[Assignment(matrix[i]) for i in idx] for idx in members]
    return SolutionSpaceSummary(
        n=n,
        beta=beta,
        frozen=frozen,
        concentration_radius=radius,
        entropy=log2(beta) / n if n else 0.0,
        clusters=clusters,
        cluster_sizes=sizes,
        radius_exact=exact,
    )


def summarize_solution_space(
    formula: AnyFormula,
    cluster_link_distance: Optional[int] = None,
    limit: Optional[int] = None,
    exact_radius_limit: Optional[int] = None,
) -> SolutionSpaceSummary:
    """Enumerate and summarize; an unsatisfiable formula gives beta=0 rather than an error."""
    if cluster_link_distance is None:
        cluster_link_distance = get_config().oracle.cluster_link_distance
    codes = solution_codes(formula, limit)
    summary = summarize_codes(codes, formula.n, cluster_link_distance, exact_radius_limit)
    logger.info(
        "beta=%d frozen=%d radius=%d clusters=%d",
        summary.beta,
        len(summary.frozen),
        summary.concentration_radius,
        len(summary.cluster_sizes),
    )
    return summary
