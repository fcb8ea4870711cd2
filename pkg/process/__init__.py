"""Generator module: restricted and unrestricted random clause processes."""

from dataclasses import replace
from typing import Optional, Tuple

from cnf import Assignment, Formula
from models import GenerationTrace, ProcessConfig, Variant

from .checker import (
    AcceptanceChecker,
    DpllChecker,
    PySatChecker,
    check_satisfiable,
    check_satisfiable_clauses,
    checker_names,
    make_checker,
    solve_complete,
)
from .planted import generate_planted, planted_universe_size
from .restricted import (
    filter_by_acceptance,
    generate_coin_process,
    generate_perm_process,
    generate_two_step,
    generate_unrestricted,
)
from .rng import derive_seed, make_rng, splitmix64
from .sampling import floyd_sample, exact_count_mass
from .trace import trace_from_jsonl, trace_to_jsonl


def generate(config: ProcessConfig) -> Tuple[Formula, Optional[GenerationTrace]]:
    """Dispatch on ``config.variant``; two_step returns F1 + F2 as one formula."""
    if config.variant is Variant.PERM_M:
        return generate_perm_process(config)
    if config.variant is Variant.COIN_P:
        return generate_coin_process(config)
    if config.variant is Variant.UNRESTRICTED_P:
        return generate_unrestricted(config), None
    if config.variant is Variant.TWO_STEP:
        first, second, trace = generate_two_step(config)
        return Formula(first.n, first.k, first.clauses + second.clauses), trace
    config = with_planted(config)
    config.validate()
    return generate_planted(config.n, config.k, config.m, config.planted, config.seed), None


def with_planted(config: ProcessConfig) -> ProcessConfig:
    """Copy of a planted config with its assignment filled in; other variants pass through."""
    if config.variant is not Variant.PLANTED or config.planted is not None:
        return config
    # drawn from the same seed when none is given
    psi = Assignment(make_rng(derive_seed(config.seed, 1)).random(config.n) < 0.5)
    return replace(config, planted=psi)


__all__ = [
    "AcceptanceChecker",
    "DpllChecker",
    "PySatChecker",
    "check_satisfiable",
    "check_satisfiable_clauses",
    "checker_names",
    "make_checker",
    "solve_complete",
    "generate",
    "with_planted",
    "generate_planted",
    "planted_universe_size",
    "filter_by_acceptance",
    "generate_coin_process",
    "generate_perm_process",
    "generate_two_step",
    "generate_unrestricted",
    "derive_seed",
    "make_rng",
    "splitmix64",
    "floyd_sample",
    "exact_count_mass",
    "trace_from_jsonl",
    "trace_to_jsonl",
]
