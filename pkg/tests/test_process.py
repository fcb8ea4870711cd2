from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cnf import Assignment, Clause, Formula, clause_universe_size, satisfies
from errors import InvalidParametersError
from models import CoinMode, Decision, ProcessConfig, Variant
from oracle import count_solutions
from process import (
    check_satisfiable,
    check_satisfiable_clauses,
    derive_seed,
    filter_by_acceptance,
    floyd_sample,
    generate,
    generate_coin_process,
    generate_perm_process,
    generate_planted,
    generate_two_step,
    generate_unrestricted,
    exact_count_mass,
    make_checker,
    make_rng,
    planted_universe_size,
    solve_complete,
    trace_from_jsonl,
    trace_to_jsonl,
    with_planted,
)
from process.sampling import lazy_permutation, sample_excluding
from strategies import dimacs_formula, formulas


def test_perm_process_over_the_whole_small_universe():
    config = ProcessConfig(n=3, k=3, variant=Variant.PERM_M, m=8, seed=11)
    formula, trace = generate_perm_process(config)
    assert formula.m == 7
    assert trace.counts() == {"accepted": 7, "rejected": 1, "scanned": 8}
    assert satisfies(formula, trace.witness)
    # the one rejected clause is the complement of the unique model
    rejected = trace.rejected_clauses()[0]
    assert all(lit.value_under(trace.witness[lit.variable]) is False for lit in rejected.literals)


@pytest.mark.parametrize("mode", [CoinMode.SCAN, CoinMode.BINOMIAL])
def test_coin_process_with_certain_coins(mode):
    config = ProcessConfig(n=3, k=3, variant=Variant.COIN_P, p=1.0, seed=3, coin_mode=mode)
    formula, trace = generate_coin_process(config)
    assert formula.m == 7
    assert (trace.accepted, trace.rejected) == (7, 1)
    assert trace.coin_successes == 8


def test_coin_process_with_zero_probability_is_empty():
    formula, trace = generate_coin_process(ProcessConfig(n=5, k=3, variant=Variant.COIN_P, p=0.0))
    assert formula.m == 0
    assert trace.events == []


def test_skipped_coins_are_recorded_but_not_scanned():
    config = ProcessConfig(
        n=4, k=3, variant=Variant.COIN_P, p=0.5, seed=2, coin_mode=CoinMode.SCAN, record_skipped=True
    )
    _, trace = generate_coin_process(config)
    assert len(trace.events) == clause_universe_size(4, 3)
    assert trace.scanned == trace.coin_successes
    skipped = [e for e in trace.events if e.decision is Decision.NOT_DRAWN]
    assert len(skipped) == len(trace.events) - trace.scanned


@pytest.mark.parametrize("seed", [0, 1, 7, 12345])
def test_filtered_unrestricted_output_is_the_coin_process(seed):
    coin, _ = generate_coin_process(ProcessConfig(n=5, k=3, variant=Variant.COIN_P, p=0.4, seed=seed))
    raw = generate_unrestricted(ProcessConfig(n=5, k=3, variant=Variant.UNRESTRICTED_P, p=0.4, seed=seed))
    filtered, _ = filter_by_acceptance(raw)
    assert filtered.clauses == coin.clauses


def test_same_seed_same_formula():
    config = ProcessConfig(n=12, k=3, variant=Variant.PERM_M, m=60, seed=99)
    first, trace1 = generate_perm_process(config)
    second, trace2 = generate_perm_process(config)
    assert first == second
    assert trace1.events == trace2.events


@settings(max_examples=20, deadline=None)
@given(st.integers(min_value=3, max_value=6), st.integers(min_value=0, max_value=2**32))
def test_every_rejection_is_forced(n, seed):
    m = clause_universe_size(n, 3)
    _, trace = generate_perm_process(ProcessConfig(n=n, k=3, variant=Variant.PERM_M, m=m, seed=seed))
    accepted = []
    for event in trace.events:
        candidate = check_satisfiable_clauses(n, accepted + [event.clause])
        if event.decision is Decision.ACCEPTED:
            assert candidate is not None
            accepted.append(event.clause)
        else:
            assert candidate is None


@pytest.mark.parametrize("seed", range(20))
@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_full_scan_ends_at_a_unique_model(n, seed):
    m = clause_universe_size(n, 3)
    formula, trace = generate_perm_process(ProcessConfig(n=n, k=3, variant=Variant.PERM_M, m=m, seed=seed))
    assert formula.m == 7 * comb(n, 3)
    assert trace.rejected == comb(n, 3)
    assert count_solutions(formula) == 1


@pytest.mark.parametrize("seed", [4, 5])
def test_backends_make_the_same_decisions(seed):
    base = dict(n=10, k=3, variant=Variant.PERM_M, m=120, seed=seed)
    dpll, _ = generate_perm_process(ProcessConfig(checker="dpll", **base))
    pysat, _ = generate_perm_process(ProcessConfig(checker="pysat", **base))
    assert dpll.clauses == pysat.clauses


def test_unknown_checker_backend():
    with pytest.raises(InvalidParametersError):
        make_checker("walksat", 5)


def test_two_step_split_and_derived_p():
    config = ProcessConfig(n=5, k=3, variant=Variant.TWO_STEP, p1=0.2, p2=0.25, seed=8)
    first, second, trace = generate_two_step(config)
    assert trace.derived_p == pytest.approx(0.4)
    assert not set(first.clauses) & set(second.clauses)
    rounds = [e.round for e in trace.events]
    assert rounds == sorted(rounds)
    combined = Formula(5, 3, first.clauses + second.clauses)
    assert check_satisfiable(combined) is not None


def test_two_step_unfiltered_keeps_both_rounds():
    config = ProcessConfig(
        n=4, k=3, variant=Variant.TWO_STEP, p1=0.5, p2=0.5, seed=1, filter_two_step=False, coin_mode=CoinMode.BINOMIAL
    )
    first, second, trace = generate_two_step(config)
    assert trace.rejected == 0
    assert trace.accepted == first.m + second.m


def test_generate_dispatch_planted_draws_its_own_assignment():
    config = ProcessConfig(n=8, k=3, variant=Variant.PLANTED, m=30, seed=6)
    formula, trace = generate(config)
    assert trace is None
    assert config.planted is None
    resolved = with_planted(config)
    assert resolved is not config
    assert satisfies(formula, resolved.planted)
    assert with_planted(resolved) is resolved


def test_planted_never_draws_the_falsified_clause():
    formula = generate_planted(3, 3, 7, Assignment.all_true(3), seed=0)
    assert formula.m == 7
    assert Clause.from_dimacs([-1, -2, -3]) not in formula


@given(st.lists(st.booleans(), min_size=6, max_size=6), st.integers(min_value=0, max_value=2**32))
def test_planted_formulas_are_satisfied_by_their_assignment(values, seed):
    psi = Assignment(values)
    formula = generate_planted(6, 3, 40, psi, seed)
    assert satisfies(formula, psi)


def test_planted_universe_and_budget():
    assert planted_universe_size(4, 3) == 28
    with pytest.raises(InvalidParametersError):
        generate_planted(3, 3, 8, Assignment.all_true(3), seed=0)


@pytest.mark.parametrize(
    "config",
    [
        ProcessConfig(n=3, k=3, variant=Variant.PERM_M, m=9),
        ProcessConfig(n=3, k=4, variant=Variant.PERM_M, m=1),
        ProcessConfig(n=5, k=3, variant=Variant.COIN_P, p=1.5),
        ProcessConfig(n=5, k=3, variant=Variant.COIN_P),
        ProcessConfig(n=5, k=3, variant=Variant.TWO_STEP, p1=0.2),
    ],
)
def test_invalid_process_parameters(config):
    with pytest.raises(InvalidParametersError):
        generate(config)


def test_trace_jsonl_round_trip():
    config = ProcessConfig(n=4, k=3, variant=Variant.PERM_M, m=32, seed=5)
    _, trace = generate_perm_process(config)
    header, restored = trace_from_jsonl(trace_to_jsonl(trace, config).splitlines())
    assert header["config"]["m"] == 32
    assert restored.events == trace.events
    assert restored.witness == trace.witness
    assert restored.counts() == trace.counts()


def test_trace_without_header_is_rejected():
    with pytest.raises(InvalidParametersError):
        trace_from_jsonl(['{"clause": [1, 2, 3], "decision": "accepted"}'])


def test_floyd_sample_is_distinct_and_in_range():
    rng = make_rng(1)
    picked = floyd_sample(50, 50, rng)
    assert sorted(picked) == list(range(50))
    assert floyd_sample(10, 0, rng) == []


def test_sample_excluding_avoids_excluded():
    picked = sample_excluding(20, 15, [0, 3, 5, 19, 7], make_rng(2))
    assert len(set(picked)) == 15
    assert not set(picked) & {0, 3, 5, 19, 7}


def test_lazy_permutation_is_a_permutation():
    assert sorted(lazy_permutation(1000, make_rng(3), batch=64)) == list(range(1000))


def test_derived_seeds_are_distinct_and_stable():
    seeds = {derive_seed(42, i, j) for i in range(10) for j in range(10)}
    assert len(seeds) == 100
    assert derive_seed(42, 1, 2) == derive_seed(42, 1, 2)
    assert derive_seed(42, 1, 2) != derive_seed(42, 2, 1)


def test_exact_count_mass_stays_in_a_band():
    ratios = [exact_count_mass(1_000_000, m) for m in (100, 1000, 10000)]
    assert all(0.3 < r < 0.5 for r in ratios)
    assert exact_count_mass(100, 0) == 0.0


def test_unsatisfiable_formula_has_no_witness():
    every = Formula(3, 3, tuple(Clause.from_dimacs([a, b, c]) for a in (1, -1) for b in (2, -2) for c in (3, -3)))
    assert check_satisfiable(every) is None
    assert solve_complete(every, backend="pysat") is None


@settings(max_examples=40, deadline=None)
@given(formulas(max_n=7, max_m=40))
def test_dpll_agrees_with_pysat(formula):
    dpll = solve_complete(formula, backend="dpll")
    pysat = solve_complete(formula, backend="pysat")
    assert (dpll is None) == (pysat is None)
    if dpll is not None:
        assert satisfies(formula, dpll)
        assert satisfies(formula, pysat)


@settings(max_examples=500, deadline=None)
@given(st.one_of(formulas(max_n=15, max_m=60), formulas(max_n=5, max_m=40)))
def test_dpll_agrees_with_enumeration(formula):
    witness = check_satisfiable(formula)
    assert (witness is None) == (count_solutions(formula) == 0)
    if witness is not None:
        assert satisfies(formula, witness)


def test_empty_formula_witness_is_all_false():
    assert check_satisfiable(Formula(4, 3)) == Assignment.all_false(4)


@pytest.mark.slow
def test_perm_and_coin_clause_counts_match_in_expectation():
    n, k, p = 10, 3, 0.3
    size = clause_universe_size(n, k)
    counts = [
        generate_coin_process(ProcessConfig(n=n, k=k, variant=Variant.COIN_P, p=p, seed=s))[1].coin_successes
        for s in range(200)
    ]
    assert np.mean(counts) == pytest.approx(p * size, rel=0.05)
