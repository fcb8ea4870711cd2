"""Statistical check that the two-round coin process matches the one-round process.

Both processes produce the same distribution over ordered clause lists when
p = p1 + p2 - p1*p2, so the filtered formulas agree in distribution as well.
Samples from each side are compared with a chi-square test on the accepted
clause count and on a hashed formula identity.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy import stats

from cnf import Formula, clause_to_index
from errors import InvalidParametersError
from models import CoinMode, ProcessConfig, Variant
from process import derive_seed, generate_coin_process, generate_two_step

logger = logging.getLogger(__name__)

HASH_BUCKETS = 64
MIN_BIN = 10


@dataclass
class TwoStepReport:
    n: int
    k: int
    p: float
    p1: float
    p2: float
    samples: int
    count_statistic: float
    count_p_value: float
    hash_statistic: float
    hash_p_value: float
    mean_clauses: Tuple[float, float] = (0.0, 0.0)

    @property
    def p_value(self) -> float:
        return min(self.count_p_value, self.hash_p_value)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "p": self.p,
            "p1": self.p1,
            "p2": self.p2,
            "derived_p": self.p1 + self.p2 - self.p1 * self.p2,
            "samples": self.samples,
            "count_statistic": self.count_statistic,
            "count_p_value": self.count_p_value,
            "hash_statistic": self.hash_statistic,
            "hash_p_value": self.hash_p_value,
            "mean_clauses": list(self.mean_clauses),
        }


def matched_split(p: float, p1: Optional[float] = None) -> Tuple[float, float]:
    """(p1, p2) with p1 + p2 - p1*p2 = p; p1 defaults to p/2."""
    p1 = p / 2 if p1 is None else p1
    if not 0.0 <= p1 <= p < 1.0:
        raise InvalidParametersError("need 0 <= p1 <= p < 1")
    return p1, (p - p1) / (1 - p1)


def _formula_key(formula: Formula) -> int:
    indices = tuple(sorted(clause_to_index(c, formula.n, formula.k) for c in formula.clauses))
    return hash(indices) % HASH_BUCKETS


def _chi_square(a: Sequence[int], b: Sequence[int]) -> Tuple[float, float]:
    """Two-sample chi-square over category labels; sparse categories are pooled."""
    ca, cb = Counter(a), Counter(b)
    table: List[List[int]] = []
    pooled = [0, 0]
    for label in sorted(set(ca) | set(cb)):
        row = [ca.get(label, 0), cb.get(label, 0)]
        if sum(row) < MIN_BIN:
            pooled[0] += row[0]
            pooled[1] += row[1]
        else:
            table.append(row)
    if sum(pooled):
        table.append(pooled)
    if len(table) < 2:
        return 0.0, 1.0
    statistic, p_value, _, _ = stats.chi2_contingency(np.array(table).T)
    return float(statistic), float(p_value)


def two_step_test(
    n: int = 4,
    k: int = 3,
    p: float = 0.3,
    p1: Optional[float] = None,
    p2: Optional[float] = None,
    samples: int = 100_000,
    seed: int = 0,
    checker: str = "dpll",
) -> TwoStepReport:
    """Compare P^sat_{n,p} with the filtered two-round process at (p1, p2).

    Leaving p2 unset picks the matched value; passing a mismatched p2 gives a
    negative control.
    """
    if samples < 1:
        raise InvalidParametersError("samples must be at least 1")
    if p2 is None:
        p1, p2 = matched_split(p, p1)
    elif p1 is None:
        p1 = p / 2
    one_counts: List[int] = []
    two_counts: List[int] = []
    one_keys: List[int] = []
    two_keys: List[int] = []
    for i in range(samples):
        coin = ProcessConfig(
            n=n, k=k, variant=Variant.COIN_P, p=p, seed=derive_seed(seed, 0, i),
            coin_mode=CoinMode.SCAN, checker=checker,
        )
        formula, _ = generate_coin_process(coin)
        one_counts.append(formula.m)
        one_keys.append(_formula_key(formula))

        split = ProcessConfig(
            n=n, k=k, variant=Variant.TWO_STEP, p1=p1, p2=p2, seed=derive_seed(seed, 1, i),
            coin_mode=CoinMode.SCAN, checker=checker,
        )
        first, second, _ = generate_two_step(split)
        combined = Formula(n, k, first.clauses + second.clauses)
        two_counts.append(combined.m)
        two_keys.append(_formula_key(combined))

    count_stat, count_p = _chi_square(one_counts, two_counts)
    hash_stat, hash_p = _chi_square(one_keys, two_keys)
    report = TwoStepReport(
        n=n, k=k, p=p, p1=p1, p2=p2, samples=samples,
        count_statistic=count_stat, count_p_value=count_p,
        hash_statistic=hash_stat, hash_p_value=hash_p,
        mean_clauses=(float(np.mean(one_counts)), float(np.mean(two_counts))),
    )
    logger.info(
        "two-step test n=%d p=%g p1=%g p2=%g: count p=%.4g hash p=%.4g",
        n, p, p1, p2, count_p, hash_p,
    )
    return report


def null_uniformity(p_values: Sequence[float]) -> float:
    """Kolmogorov-Smirnov p-value of the p-values against Uniform(0, 1)."""
    return float(stats.kstest(np.asarray(p_values, dtype=float), "uniform").pvalue)
