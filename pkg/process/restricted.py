"""The restricted online clause processes and their unrestricted counterparts.

Each process draws clause indices from a seeded stream, decodes them through
the canonical index bijection, and (when restricted) keeps a clause iff the
formula built so far plus the clause stays satisfiable.
"""

import logging
from typing import Iterable, List, Optional, Tuple

import numpy as np

from cnf import Clause, Formula, FormulaBuilder, get_indexer
from config import get_config
from errors import InvalidParametersError
from models import CoinMode, Decision, GenerationTrace, ProcessConfig, Variant

from .checker import AcceptanceChecker, make_checker
from .rng import make_rng
from .sampling import floyd_sample, lazy_permutation, sample_excluding

logger = logging.getLogger(__name__)

# Scan the whole universe coin by coin only while it stays this small.
SCAN_LIMIT = 1 << 20


def _checker_for(config: ProcessConfig) -> AcceptanceChecker:
    settings = get_config().generator
    name = config.checker if config.checker != "auto" else settings.checker_backend
    return make_checker(name, config.n, settings.dpll_max_n)


def _coin_mode(config: ProcessConfig) -> CoinMode:
    if config.coin_mode is not CoinMode.AUTO:
        return config.coin_mode
    return CoinMode.SCAN if config.universe_size <= SCAN_LIMIT else CoinMode.BINOMIAL


def restricted_scan(
    config: ProcessConfig,
    clauses: Iterable[Clause],
    trace: GenerationTrace,
    builder: FormulaBuilder,
    checker: AcceptanceChecker,
    round: int = 1,
) -> None:
    """Offer clauses in order, recording each decision in ``trace``."""
    for clause in clauses:
        if checker.offer(clause):
            builder.append(clause)
            trace.record(clause, Decision.ACCEPTED, round)
        else:
            trace.record(clause, Decision.REJECTED, round)


def filter_by_acceptance(formula: Formula, seed: int = 0, checker: str = "auto") -> Tuple[Formula, GenerationTrace]:
    """Run the acceptance rule over an already ordered clause sequence."""
    config = ProcessConfig(n=formula.n, k=formula.k, seed=seed, checker=checker)
    trace = GenerationTrace(rng_seed=seed)
    builder = FormulaBuilder(formula.n, formula.k)
    acceptance = _checker_for(config)
    try:
        restricted_scan(config, formula.clauses, trace, builder, acceptance)
        trace.witness = acceptance.witness
    finally:
        acceptance.close()
    return builder.build(), trace


def _finish(config: ProcessConfig, trace: GenerationTrace, builder: FormulaBuilder, checker: AcceptanceChecker) -> Formula:
    trace.witness = checker.witness
    formula = builder.build()
    logger.info(
        "%s n=%d k=%d seed=%d: accepted=%d rejected=%d searches=%d",
        config.variant.value,
        config.n,
        config.k,
        config.seed,
        trace.accepted,
        trace.rejected,
        checker.searches,
    )
    return formula


def generate_perm_process(config: ProcessConfig) -> Tuple[Formula, GenerationTrace]:
    """Scan the first m clauses of a uniform permutation of the clause universe.

    Realized as m distinct uniform indices in uniform order, which has the
    same distribution as the first m entries of a uniform permutation.
    """
    if config.variant is not Variant.PERM_M:
        raise InvalidParametersError("generate_perm_process needs variant perm_m")
    config.validate()
    rng = make_rng(config.seed)
    indexer = get_indexer(config.n, config.k)
    trace = GenerationTrace(rng_seed=config.seed)
    builder = FormulaBuilder(config.n, config.k)
    checker = _checker_for(config)
    try:
        indices = floyd_sample(indexer.size, config.m, rng)
        restricted_scan(config, (indexer.from_index(i) for i in indices), trace, builder, checker)
        return _finish(config, trace, builder, checker), trace
    finally:
        checker.close()


def _coin_stream(
    size: int, p: float, rng: np.random.Generator, mode: CoinMode, skipped: Optional[List[int]] = None
) -> List[int]:
    """Indices whose p-coin succeeded, in process order.

    SCAN walks a lazily shuffled universe with one coin per clause; BINOMIAL
    draws the success count first. Both give the same distribution.
    """
    if p <= 0.0:
        return []
    if mode is CoinMode.BINOMIAL:
        return floyd_sample(size, int(rng.binomial(size, p)), rng)
    drawn = []
    coins = rng.random(size) < p
    for idx, success in zip(lazy_permutation(size, rng), coins.tolist()):
        if success:
            drawn.append(idx)
        elif skipped is not None:
            skipped.append(idx)
    return drawn


def generate_coin_process(config: ProcessConfig) -> Tuple[Formula, GenerationTrace]:
    """Include each clause with probability p if it keeps the formula satisfiable."""
    if config.variant is not Variant.COIN_P:
        raise InvalidParametersError("generate_coin_process needs variant coin_p")
    config.validate()
    rng = make_rng(config.seed)
    indexer = get_indexer(config.n, config.k)
    mode = _coin_mode(config)
    skipped: Optional[List[int]] = [] if (config.record_skipped and mode is CoinMode.SCAN) else None
    drawn = _coin_stream(indexer.size, config.p, rng, mode, skipped)
    trace = GenerationTrace(rng_seed=config.seed, coin_successes=len(drawn))
    builder = FormulaBuilder(config.n, config.k)
    checker = _checker_for(config)
    try:
        restricted_scan(config, (indexer.from_index(i) for i in drawn), trace, builder, checker)
        for idx in skipped or ():
            trace.record(indexer.from_index(idx), Decision.NOT_DRAWN)
        return _finish(config, trace, builder, checker), trace
    finally:
        checker.close()


def generate_unrestricted(config: ProcessConfig) -> Formula:
    """Each clause independently with probability p, random order; may be unsatisfiable.

    Consumes the same random stream as generate_coin_process with the same seed,
    so filtering the result through the acceptance rule reproduces that process.
    """
    if config.variant is not Variant.UNRESTRICTED_P:
        raise InvalidParametersError("generate_unrestricted needs variant unrestricted_p")
    config.validate()
    rng = make_rng(config.seed)
    indexer = get_indexer(config.n, config.k)
    drawn = _coin_stream(indexer.size, config.p, rng, _coin_mode(config))
    return Formula(config.n, config.k, tuple(indexer.from_index(i) for i in drawn))


def _two_step_rounds(config: ProcessConfig, rng: np.random.Generator) -> Tuple[List[int], List[int]]:
    size = config.universe_size
    mode = _coin_mode(config)
    if mode is CoinMode.SCAN:
        round1 = _coin_stream(size, config.p1, rng, CoinMode.SCAN)
        first = set(round1)
        remaining = [i for i in range(size) if i not in first]
        coins = rng.random(len(remaining)) < config.p2
        round2 = [i for i, hit in zip(remaining, coins.tolist()) if hit]
        return round1, [round2[j] for j in rng.permutation(len(round2))]
    round1 = floyd_sample(size, int(rng.binomial(size, config.p1)), rng)
    count2 = int(rng.binomial(size - len(round1), config.p2))
    return round1, sample_excluding(size, count2, round1, rng)


def generate_two_step(config: ProcessConfig) -> Tuple[Formula, Formula, GenerationTrace]:
    """Two coin rounds with p1 then p2; p = p1 + p2 - p1*p2.

    Round 1 clauses (random order) come first, round 2 clauses (random order)
    after. With ``filter_two_step`` the concatenation is scanned through the
    acceptance rule and the returned parts are F1* and F2*; otherwise the raw
    F1 and F2 are returned and every event is recorded as accepted.
    """
    if config.variant is not Variant.TWO_STEP:
        raise InvalidParametersError("generate_two_step needs variant two_step")
    config.validate()
    rng = make_rng(config.seed)
    indexer = get_indexer(config.n, config.k)
    round1, round2 = _two_step_rounds(config, rng)
    first = [indexer.from_index(i) for i in round1]
    second = [indexer.from_index(i) for i in round2]
    trace = GenerationTrace(
        rng_seed=config.seed, coin_successes=len(first) + len(second), derived_p=config.derived_p
    )
    if not config.filter_two_step:
        for r, clauses in ((1, first), (2, second)):
            for clause in clauses:
                trace.record(clause, Decision.ACCEPTED, r)
        return Formula(config.n, config.k, first), Formula(config.n, config.k, second), trace

    builder = FormulaBuilder(config.n, config.k)
    checker = _checker_for(config)
    try:
        restricted_scan(config, first, trace, builder, checker, round=1)
        split = len(builder)
        restricted_scan(config, second, trace, builder, checker, round=2)
        _finish(config, trace, builder, checker)
    finally:
        checker.close()
    kept = builder.clauses
    return (
        Formula(config.n, config.k, tuple(kept[:split])),
        Formula(config.n, config.k, tuple(kept[split:])),
        trace,
    )
