"""Sampling distinct clause indices without materializing the clause universe."""

from bisect import bisect_right
from math import sqrt
from typing import Iterator, List, Sequence

import numpy as np
from scipy.stats import binom


def floyd_sample(universe: int, count: int, rng: np.random.Generator) -> List[int]:
    """``count`` distinct integers from [0, universe) in uniformly random order.

    Floyd's algorithm picks the set; a shuffle fixes the order.
    """
    if count <= 0:
        return []
    highs = np.arange(universe - count + 1, universe + 1, dtype=np.int64)
    draws = rng.integers(0, highs)
    chosen = set()
    picked = []
    for j, t in zip(range(universe - count, universe), draws.tolist()):
        if t in chosen:
            t = j
        chosen.add(t)
        picked.append(t)
    order = rng.permutation(count)
    return [picked[i] for i in order]


def _nth_not_excluded(rank: int, excluded: Sequence[int]) -> int:
    """The rank-th integer (0-based) that is not in the sorted list ``excluded``."""
    value = rank
    while True:
        shifted = rank + bisect_right(excluded, value)
        if shifted == value:
            return value
        value = shifted


def sample_excluding(universe: int, count: int, excluded: Sequence[int], rng: np.random.Generator) -> List[int]:
    """Like floyd_sample, over [0, universe) minus ``excluded``."""
    blocked = sorted(excluded)
    ranks = floyd_sample(universe - len(blocked), count, rng)
    return [_nth_not_excluded(r, blocked) for r in ranks]


def lazy_permutation(universe: int, rng: np.random.Generator, batch: int = 4096) -> Iterator[int]:
    """Uniformly shuffled stream over [0, universe); Fisher-Yates with a sparse swap map."""
    swapped = {}
    i = 0
    while i < universe:
        size = min(batch, universe - i)
        offsets = rng.integers(0, np.arange(universe - i, universe - i - size, -1, dtype=np.int64))
        for off in offsets.tolist():
            j = i + off
            vi = swapped.get(i, i)
            vj = swapped.get(j, j)
            swapped[j] = vi
            swapped.pop(i, None)
            yield vj
            i += 1


def exact_count_mass(universe: int, m: int) -> float:
    """Pr[Binomial(M, m/M) = m] * sqrt(m); stays in a fixed positive band."""
    if m <= 0 or universe <= 0:
        return 0.0
    return float(binom.pmf(m, universe, m / universe)) * sqrt(m)
