"""Majority-vote solver: majority vote, reassignment, unassignment, propagation, component search."""

from .base import BaseStep, SolveState
from .exhaustive import ExhaustiveStep, component_cap, exhaustive_component_search, least_solution
from .majority import MajorityStep, majority_vote
from .propagation import Propagation, PropagationStep, unit_propagation
from .reassign import ReassignStep, reassign_with_trace, reassignment
from .runner import default_steps, default_t_sweep, run_attempt, solve
from .unassign import UnassignStep, unassignment

__all__ = [
    "BaseStep",
    "SolveState",
    "ExhaustiveStep",
    "component_cap",
    "exhaustive_component_search",
    "least_solution",
    "MajorityStep",
    "majority_vote",
    "Propagation",
    "PropagationStep",
    "unit_propagation",
    "ReassignStep",
    "reassign_with_trace",
    "reassignment",
    "default_steps",
    "default_t_sweep",
    "run_attempt",
    "solve",
    "UnassignStep",
    "unassignment",
]
