"""Corebuilder: expanding sets, cores, satellite closure and the structural report."""

from .analysis import analyze_structure, best_report, core_drift, sweep_t
from .core import build_core
from .expanding import build_expanding_set
from .satellites import satellite_closure, satellite_levels

__all__ = [
    "analyze_structure",
    "best_report",
    "core_drift",
    "sweep_t",
    "build_core",
    "build_expanding_set",
    "satellite_closure",
    "satellite_levels",
]
