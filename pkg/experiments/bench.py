"""Wall-clock of the majority-vote solver across n at a fixed clause density."""

import logging
import time
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from models import ProcessConfig, SolverConfig, Variant
from process import derive_seed, generate
from solver import default_t_sweep, solve

logger = logging.getLogger(__name__)


@dataclass
class BenchPoint:
    n: int
    m: float
    trials: int
    successes: int
    mean_seconds: float
    seconds_per_clause: float

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "trials": self.trials,
            "success_rate": self.successes / self.trials,
            "mean_seconds": self.mean_seconds,
            "seconds_per_clause": self.seconds_per_clause,
        }


def bench(
    ns: Sequence[int], ratio: float, k: int = 3, trials: int = 3, seed: int = 0, checker: str = "auto"
) -> List[BenchPoint]:
    """Generate with the permutation process and time solve() only."""
    points = []
    for i, n in enumerate(ns):
        seconds, sizes, successes = [], [], 0
        for trial in range(trials):
            config = ProcessConfig(
                n=n, k=k, variant=Variant.PERM_M, m=int(round(ratio * n)),
                seed=derive_seed(seed, i, trial), checker=checker,
            )
            formula, _ = generate(config)
            start = time.perf_counter()
            outcome = solve(formula, SolverConfig(t_sweep=default_t_sweep(formula)))
            seconds.append(time.perf_counter() - start)
            sizes.append(formula.m)
            successes += outcome.success
        mean_seconds = float(np.mean(seconds))
        mean_m = float(np.mean(sizes))
        point = BenchPoint(
            n=n,
            m=mean_m,
            trials=trials,
            successes=successes,
            mean_seconds=mean_seconds,
            seconds_per_clause=mean_seconds / mean_m if mean_m else 0.0,
        )
        logger.info("bench n=%d: %.3fs mean, %.2e s/clause", n, mean_seconds, point.seconds_per_clause)
        points.append(point)
    return points
