"""Experiment engine: grids of trials, process evolution, two-step test, benchmarks."""

from .bench import BenchPoint, bench
from .evolve import evolve, frozen_monotone, snapshots_at_ratios, trace_snapshots
from .runner import load_spec, process_config, run_experiment, run_trial, spec_from_dict, trial_snapshots
from .two_step import TwoStepReport, matched_split, null_uniformity, two_step_test

__all__ = [
    "BenchPoint",
    "bench",
    "evolve",
    "frozen_monotone",
    "snapshots_at_ratios",
    "trace_snapshots",
    "load_spec",
    "process_config",
    "run_experiment",
    "run_trial",
    "spec_from_dict",
    "trial_snapshots",
    "TwoStepReport",
    "matched_split",
    "null_uniformity",
    "two_step_test",
]
