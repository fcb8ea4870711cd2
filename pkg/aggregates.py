"""Per-point aggregates over experiment rows."""

from typing import List, Optional, Sequence

from models import ExperimentRow, GridPoint

# Row columns averaged per point (mean over rows where the column is set)
MEAN_COLUMNS = (
    "m",
    "accepted",
    "rejected",
    "t_used",
    "maj_disagreement",
    "beta",
    "frozen_fraction",
    "radius",
    "entropy",
    "clusters",
    "core_size",
    "satellite_size",
    "coverage",
    "largest_component",
    "core_drift",
)


def _mean(values: Sequence[Optional[float]]) -> Optional[float]:
    present = [float(v) for v in values if v is not None]
    if not present:
        return None
    return round(sum(present) / len(present), 6)


def _rate(values: Sequence[Optional[bool]]) -> Optional[float]:
    present = [bool(v) for v in values if v is not None]
    if not present:
        return None
    return round(sum(present) / len(present), 6)


def aggregate_point(point: GridPoint, rows: List[ExperimentRow]) -> dict:
    """Means and rates for one grid point; error rows count only toward ``errors``."""
    ok = [r for r in rows if r.error is None]
    out = {
        "label": point.label(),
        "n": point.n,
        "k": point.k,
        "ratio": point.ratio,
        "p": point.p,
        "trials": len(rows),
        "errors": len(rows) - len(ok),
        "success_rate": _rate([r.solve_success for r in ok]),
        "drift_in_satellites_rate": _rate([r.drift_in_satellites for r in ok]),
        "evolve_monotone_rate": _rate([r.evolve_monotone for r in ok]),
        "max_largest_component": max(
            (r.largest_component for r in ok if r.largest_component is not None), default=None
        ),
    }
    for column in MEAN_COLUMNS:
        out[f"mean_{column}"] = _mean([getattr(r, column) for r in ok])
    return out


def aggregate_rows(rows: List[ExperimentRow], grid: List[GridPoint]) -> List[dict]:
    """One aggregate per grid point, in grid order."""
    return [aggregate_point(point, [r for r in rows if r.point_index == i]) for i, point in enumerate(grid)]
