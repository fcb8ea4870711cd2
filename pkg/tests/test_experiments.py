import io
import json
from dataclasses import asdict, replace
from functools import lru_cache

import numpy as np
import pytest

from aggregates import aggregate_point, aggregate_rows
from errors import InvalidParametersError, OracleLimitError
from experiments import runner as experiment_runner
from experiments import (
    bench,
    evolve,
    frozen_monotone,
    load_spec,
    matched_split,
    null_uniformity,
    process_config,
    run_experiment,
    run_trial,
    snapshots_at_ratios,
    spec_from_dict,
    trial_snapshots,
    two_step_test,
)
from models import EvolveSnapshot, ExperimentRow, ExperimentSpec, GridPoint
from oracle import count_solutions
from process import derive_seed, generate
from report import (
    ROW_COLUMNS,
    TIMING_COLUMNS,
    generate_html_report,
    report_to_dict,
    write_report_json,
    write_rows_csv,
    write_snapshots_csv,
)


def _untimed(rows):
    return [{k: v for k, v in asdict(r).items() if k not in TIMING_COLUMNS} for r in rows]


def test_evolve_runs_to_the_unique_solution():
    snaps = evolve(6, 3, seed=4, snapshots=[160, 10, 40])
    assert [s.m for s in snaps] == [10, 40, 160]
    last = snaps[-1]
    assert (last.accepted, last.rejected) == (140, 20)
    assert last.beta == 1
    assert last.frozen_fraction == 1.0
    assert last.radius == 0
    betas = [s.beta for s in snaps]
    assert betas == sorted(betas, reverse=True)
    assert frozen_monotone(snaps)


def test_evolve_without_oracle():
    snaps = evolve(30, 3, seed=1, snapshots=[30, 60], oracle=False)
    assert [s.beta for s in snaps] == [None, None]
    assert snaps[-1].accepted + snaps[-1].rejected == 60


def test_evolve_refuses_large_oracle_runs():
    with pytest.raises(OracleLimitError):
        evolve(30, 3, seed=0, snapshots=[10], oracle_limit=20)


@lru_cache(maxsize=None)
def _runs_at_n20(seeds):
    points = snapshots_at_ratios(20, (5, 10, 15, 20))
    return [evolve(20, 3, seed=s, snapshots=points) for s in range(seeds)]


@pytest.mark.slow
def test_frozen_fraction_rises_and_entropy_falls_with_density():
    runs = _runs_at_n20(200)[:100]
    frozen = np.mean([[s.frozen_fraction for s in snaps] for snaps in runs], axis=0)
    entropy = np.mean([[s.entropy for s in snaps] for snaps in runs], axis=0)
    assert list(frozen) == sorted(frozen)
    assert list(entropy) == sorted(entropy, reverse=True)
    assert frozen[-1] >= 0.85
    assert entropy[-1] <= 0.10


@pytest.mark.slow
def test_unique_solution_at_ratio_20():
    runs = _runs_at_n20(200)
    unique = sum(1 for snaps in runs if snaps[-1].beta == 1)
    assert unique >= 0.9 * len(runs)


def test_snapshot_helpers():
    assert snapshots_at_ratios(10, [1, 2.5, 1]) == [10, 25]
    falling = [EvolveSnapshot(m=1, ratio=1, accepted=1, rejected=0, frozen_fraction=f) for f in (0.2, 0.1)]
    assert not frozen_monotone(falling)
    assert frozen_monotone([])


def test_matched_split():
    p1, p2 = matched_split(0.3)
    assert p1 == pytest.approx(0.15)
    assert p1 + p2 - p1 * p2 == pytest.approx(0.3)
    with pytest.raises(InvalidParametersError):
        matched_split(0.3, p1=0.5)


def test_two_step_report_is_deterministic():
    first = two_step_test(n=4, p=0.3, samples=100, seed=2)
    second = two_step_test(n=4, p=0.3, samples=100, seed=2)
    assert first.to_dict() == second.to_dict()
    assert 0.0 <= first.p_value <= 1.0
    assert first.to_dict()["derived_p"] == pytest.approx(0.3)


def test_two_step_needs_samples():
    with pytest.raises(InvalidParametersError):
        two_step_test(samples=0)


def test_null_uniformity_of_spread_p_values():
    assert null_uniformity([(i + 0.5) / 50 for i in range(50)]) > 0.5


@pytest.mark.slow
def test_two_step_identity_at_n4():
    matched = two_step_test(n=4, p=0.3, samples=100_000, seed=11)
    assert matched.p_value > 0.01
    p1, p2 = matched_split(0.3)
    mismatched = two_step_test(n=4, p=0.3, p1=p1, p2=p2 + 0.1, samples=100_000, seed=11)
    assert mismatched.p_value < 0.001


def _small_spec(**overrides):
    spec = ExperimentSpec(grid=[GridPoint(n=8, ratio=3.0), GridPoint(n=6, p=0.1)], trials=2, master_seed=9)
    return replace(spec, **overrides)


def test_experiment_rows_are_seeded_per_point_and_trial():
    spec = _small_spec(analyses=("solve", "oracle", "core"))
    report = run_experiment(spec)
    assert len(report.rows) == 4
    assert [(r.point_index, r.trial) for r in report.rows] == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert report.rows[3].seed == derive_seed(9, 1, 1)
    assert all(r.error is None for r in report.rows)
    assert all(r.beta is not None and r.core_size is not None for r in report.rows)
    assert [a["label"] for a in report.aggregates] == ["n=8,k=3,ratio=3", "n=6,k=3,p=0.1"]


def test_experiment_is_reproducible():
    spec = _small_spec(analyses=("solve", "oracle"))
    assert _untimed(run_experiment(spec).rows) == _untimed(run_experiment(spec).rows)


def test_single_trial_replays_its_row():
    spec = _small_spec(analyses=("solve",))
    report = run_experiment(spec)
    assert _untimed([run_trial(spec, 0, 1)]) == _untimed([report.rows[1]])


def test_worker_pool_gives_the_same_rows():
    spec = _small_spec(analyses=("solve",))
    assert _untimed(run_experiment(replace(spec, workers=2)).rows) == _untimed(run_experiment(spec).rows)


def test_extra_analyses_fill_their_columns():
    spec = ExperimentSpec(
        grid=[GridPoint(n=8, ratio=4.0)],
        trials=1,
        analyses=("core_drift", "evolve", "two_step_test"),
        two_step_samples=20,
    )
    report = run_experiment(spec)
    row = report.rows[0]
    assert row.error is None
    assert row.drift_in_satellites is not None
    assert row.evolve_monotone is True
    assert 0.0 <= report.aggregates[0]["two_step_p_value"] <= 1.0


def test_library_errors_are_recorded_on_the_row():
    spec = ExperimentSpec(grid=[GridPoint(n=2, k=3, ratio=1.0)], trials=1)
    row = run_trial(spec, 0, 0)
    assert row.error.startswith("InvalidParametersError")
    aggregate = aggregate_rows([row], spec.grid)[0]
    assert aggregate["errors"] == 1
    assert aggregate["success_rate"] is None


def test_unexpected_errors_are_recorded_on_the_row(monkeypatch):
    def crash(*args):
        raise RuntimeError("boom")

    monkeypatch.setattr(experiment_runner, "_analyze", crash)
    row = run_trial(_small_spec(), 0, 0)
    assert row.error == "RuntimeError: boom"
    assert row.m > 0


@pytest.mark.parametrize("point", [GridPoint(n=8, ratio=4.0), GridPoint(n=6, p=0.3)])
def test_trial_snapshots_follow_the_trial_formula(point):
    spec = ExperimentSpec(grid=[point], trials=1, analyses=("evolve",))
    formula, trace = generate(process_config(point, derive_seed(spec.master_seed, 0, 0)))
    snaps = trial_snapshots(spec, formula, trace)
    assert [s.m for s in snaps] == sorted({s.m for s in snaps})
    last = snaps[-1]
    assert last.m == trace.scanned
    assert last.accepted == formula.m
    assert last.beta == count_solutions(formula)


@pytest.mark.parametrize(
    "spec",
    [
        ExperimentSpec(grid=[GridPoint(n=8, ratio=3.0)], trials=0),
        ExperimentSpec(grid=[]),
        ExperimentSpec(grid=[GridPoint(n=8, ratio=3.0, p=0.1)]),
        ExperimentSpec(grid=[GridPoint(n=40, ratio=3.0)], analyses=("oracle",)),
        ExperimentSpec(grid=[GridPoint(n=8, ratio=3.0)], analyses=("astrology",)),
    ],
)
def test_invalid_specs(spec):
    with pytest.raises(InvalidParametersError):
        run_experiment(spec)


def test_spec_from_json(tmp_path):
    path = tmp_path / "spec.json"
    path.write_text(
        json.dumps({"grid": [{"n": 10, "ratio": 2}], "trials": 3, "analyses": ["solve"], "t_sweep": [1, 2]}),
        encoding="utf-8",
    )
    spec = load_spec(path)
    assert spec.grid == [GridPoint(n=10, ratio=2)]
    assert spec.analyses == ("solve",)
    assert spec.t_sweep == (1, 2)


def test_bad_spec_files(tmp_path):
    path = tmp_path / "spec.json"
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(InvalidParametersError):
        load_spec(path)
    with pytest.raises(InvalidParametersError):
        spec_from_dict({"trials": 2})
    with pytest.raises(InvalidParametersError):
        spec_from_dict({"grid": [{"n": 5, "ratio": 1}], "colour": "red"})


def test_aggregate_point_means_and_rates():
    point = GridPoint(n=10, ratio=2.0)
    rows = [
        ExperimentRow(point_index=0, trial=0, seed=1, n=10, k=3, m=20, solve_success=True, beta=4),
        ExperimentRow(point_index=0, trial=1, seed=2, n=10, k=3, m=18, solve_success=False, beta=None),
        ExperimentRow(point_index=0, trial=2, seed=3, n=10, k=3, m=0, error="KSatError: boom"),
    ]
    agg = aggregate_point(point, rows)
    assert agg["trials"] == 3
    assert agg["errors"] == 1
    assert agg["success_rate"] == 0.5
    assert agg["mean_m"] == 19.0
    assert agg["mean_beta"] == 4.0
    assert agg["mean_core_size"] is None


def test_rows_csv_has_every_column():
    report = run_experiment(_small_spec(analyses=("solve",), trials=1))
    buffer = io.StringIO()
    write_rows_csv(report.rows, buffer)
    lines = buffer.getvalue().splitlines()
    assert lines[0].split(",") == ROW_COLUMNS
    assert len(lines) == 1 + len(report.rows)


def test_snapshots_csv(tmp_path):
    path = tmp_path / "evolve.csv"
    write_snapshots_csv(evolve(5, 3, seed=0, snapshots=[5, 10]), path)
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0].startswith("m,ratio,accepted,rejected,beta")
    assert len(lines) == 3


def test_json_and_html_reports(tmp_path):
    report = run_experiment(_small_spec(analyses=("solve", "core"), trials=1))
    path = tmp_path / "report.json"
    write_report_json(report, path)
    data = json.loads(path.read_text(encoding="utf-8"))
    assert data == json.loads(json.dumps(report_to_dict(report), sort_keys=True))
    assert len(data["rows"]) == 2
    html = generate_html_report(report)
    assert "n=8,k=3,ratio=3" in html
    assert "<table" in html


def test_bench_reports_each_n():
    points = bench([20, 30], ratio=3.0, trials=1, seed=1)
    assert [p.n for p in points] == [20, 30]
    for point in points:
        data = point.to_dict()
        assert 0.0 <= data["success_rate"] <= 1.0
        assert data["mean_seconds"] >= 0.0
