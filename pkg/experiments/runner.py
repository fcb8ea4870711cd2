"""Experiment grid execution.

Every trial is a pure function of (spec, grid index, trial index): its seed is
derive_seed(master_seed, grid index, trial index). Trials may run in worker
processes; rows are merged back in (grid index, trial index) order.
"""

import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from pathlib import Path
from typing import List, Tuple, Union

from aggregates import aggregate_rows
from cnf import Formula
from errors import InvalidParametersError, KSatError
from models import (
    CoreParams,
    Decision,
    EvolveSnapshot,
    ExperimentReport,
    ExperimentRow,
    ExperimentSpec,
    GenerationTrace,
    GridPoint,
    ProcessConfig,
    SolverConfig,
    Variant,
)
from oracle import majority_disagreement, summarize_solution_space
from process import derive_seed, generate
from solver import default_t_sweep, solve
from structure import best_report, core_drift, sweep_t

from .evolve import frozen_monotone, snapshots_at_ratios, trace_snapshots
from .two_step import two_step_test

logger = logging.getLogger(__name__)

# stream index reserved for per-point two-step tests, disjoint from trial indices
TWO_STEP_STREAM = 1 << 32


def process_config(point: GridPoint, seed: int) -> ProcessConfig:
    if point.ratio is not None:
        return ProcessConfig(
            n=point.n, k=point.k, variant=Variant.PERM_M, m=int(round(point.ratio * point.n)), seed=seed
        )
    return ProcessConfig(n=point.n, k=point.k, variant=Variant.COIN_P, p=point.p, seed=seed)


def _sweep(spec: ExperimentSpec, formula: Formula) -> Tuple[int, ...]:
    return tuple(spec.t_sweep) if spec.t_sweep else default_t_sweep(formula)


def _first_round(formula: Formula, trace: GenerationTrace) -> Formula:
    """Accepted clauses among the first half of the scan."""
    half = trace.events[: len(trace.events) // 2]
    return formula.prefix(sum(1 for e in half if e.decision is Decision.ACCEPTED))


def trial_snapshots(spec: ExperimentSpec, formula: Formula, trace: GenerationTrace) -> List[EvolveSnapshot]:
    """Snapshots along the trial's own trace at integer ratios, ending at the full scan."""
    ratios = range(1, trace.scanned // formula.n + 1)
    points = [m for m in snapshots_at_ratios(formula.n, ratios) if m < trace.scanned]
    return trace_snapshots(
        trace,
        formula.n,
        points + [trace.scanned],
        oracle=formula.n <= spec.oracle_limit,
        oracle_limit=spec.oracle_limit,
    )


def _analyze(spec: ExperimentSpec, row: ExperimentRow, formula: Formula, trace: GenerationTrace) -> None:
    ts = _sweep(spec, formula)
    if "solve" in spec.analyses:
        start = time.perf_counter()
        outcome = solve(formula, SolverConfig(t_sweep=ts))
        row.solve_seconds = time.perf_counter() - start
        row.solve_success = outcome.success
        row.solve_failure = outcome.failure.value if outcome.failure else None
        row.t_used = outcome.t_used
    if "oracle" in spec.analyses:
        summary = summarize_solution_space(formula, limit=spec.oracle_limit)
        row.beta = summary.beta
        row.frozen_fraction = summary.frozen_fraction
        row.radius = summary.concentration_radius
        row.entropy = summary.entropy
        row.clusters = len(summary.cluster_sizes)
        row.maj_disagreement = majority_disagreement(formula, limit=spec.oracle_limit)
    if "core" in spec.analyses:
        best = best_report(sweep_t(formula, trace.witness, ts))
        row.core_size = len(best.H)
        row.satellite_size = len(best.S)
        row.coverage = best.coverage
        row.largest_component = best.largest_component
    if "core_drift" in spec.analyses:
        params = CoreParams(t=ts[min(1, len(ts) - 1)])
        drift = core_drift(_first_round(formula, trace), formula, trace.witness, params)
        row.core_drift = len(drift.drift)
        row.drift_in_satellites = drift.drift_in_satellites
    if "evolve" in spec.analyses:
        row.evolve_monotone = frozen_monotone(trial_snapshots(spec, formula, trace))


def run_trial(spec: ExperimentSpec, point_index: int, trial: int) -> ExperimentRow:
    """One row; errors are recorded on the row instead of raised."""
    point = spec.grid[point_index]
    seed = derive_seed(spec.master_seed, point_index, trial)
    row = ExperimentRow(point_index=point_index, trial=trial, seed=seed, n=point.n, k=point.k, m=0)
    try:
        start = time.perf_counter()
        formula, trace = generate(process_config(point, seed))
        row.generate_seconds = time.perf_counter() - start
        row.m = formula.m
        row.accepted = trace.accepted
        row.rejected = trace.rejected
        _analyze(spec, row, formula, trace)
    except KSatError as exc:
        row.error = f"{type(exc).__name__}: {exc}"
        logger.warning("%s trial %d failed: %s", point.label(), trial, row.error)
    except Exception as exc:
        row.error = f"{type(exc).__name__}: {exc}"
        logger.exception("%s trial %d crashed", point.label(), trial)
    logger.info("%s trial %d: m=%d rejected=%d solved=%s", point.label(), trial, row.m, row.rejected, row.solve_success)
    return row


def _run_trial_args(args: Tuple[ExperimentSpec, int, int]) -> ExperimentRow:
    return run_trial(*args)


def _two_step_aggregates(spec: ExperimentSpec, aggregates: List[dict]) -> None:
    for index, (point, agg) in enumerate(zip(spec.grid, aggregates)):
        p = point.p
        if p is None:
            universe = ProcessConfig(n=point.n, k=point.k).universe_size
            p = min(1.0, point.ratio * point.n / universe)
        try:
            report = two_step_test(
                n=point.n,
                k=point.k,
                p=p,
                samples=spec.two_step_samples,
                seed=derive_seed(spec.master_seed, index, TWO_STEP_STREAM),
                checker="auto",
            )
        except KSatError as exc:
            logger.warning("%s two-step test skipped: %s", point.label(), exc)
            agg["two_step_p_value"] = None
            continue
        agg["two_step_p_value"] = report.p_value


def run_experiment(spec: ExperimentSpec) -> ExperimentReport:
    """Every (point, trial) once; rows in deterministic order whatever the worker count."""
    spec.validate()
    tasks = [(spec, i, trial) for i in range(len(spec.grid)) for trial in range(spec.trials)]
    if spec.workers > 1:
        rows: List[ExperimentRow] = []
        with ProcessPoolExecutor(max_workers=spec.workers) as executor:
            futures = {executor.submit(_run_trial_args, task): task for task in tasks}
            for future in as_completed(futures):
                rows.append(future.result())
        rows.sort(key=lambda r: (r.point_index, r.trial))
    else:
        rows = [run_trial(*task) for task in tasks]
    aggregates = aggregate_rows(rows, spec.grid)
    if "two_step_test" in spec.analyses:
        _two_step_aggregates(spec, aggregates)
    logger.info("experiment finished: %d rows over %d points", len(rows), len(spec.grid))
    return ExperimentReport(spec=spec, rows=rows, aggregates=aggregates)


def spec_from_dict(data: dict) -> ExperimentSpec:
    try:
        grid = [GridPoint(**point) for point in data["grid"]]
    except (KeyError, TypeError) as exc:
        raise InvalidParametersError(f"bad experiment grid: {exc}") from None
    fields = {k: v for k, v in data.items() if k != "grid"}
    if "analyses" in fields:
        fields["analyses"] = tuple(fields["analyses"])
    if fields.get("t_sweep") is not None:
        fields["t_sweep"] = tuple(int(t) for t in fields["t_sweep"])
    try:
        return ExperimentSpec(grid=grid, **fields)
    except TypeError as exc:
        raise InvalidParametersError(f"bad experiment spec: {exc}") from None


def load_spec(path: Union[str, Path]) -> ExperimentSpec:
    """Read an experiment spec from a JSON file."""
    with open(path, encoding="utf-8") as handle:
        try:
            data = json.load(handle)
        except json.JSONDecodeError as exc:
            raise InvalidParametersError(f"{path}: not valid JSON ({exc})") from None
    return spec_from_dict(data)
