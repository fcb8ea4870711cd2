"""Base class and shared state for the steps of the majority-vote solver."""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Dict, Optional

from cnf import Assignment, Formula, PartialAssignment, ResidualFormula
from models import FailureReason, SolverConfig, StageDiagnostics


@dataclass
class SolveState:
    """Everything one attempt at a fixed t passes from step to step."""

    formula: Formula
    config: SolverConfig
    diagnostics: StageDiagnostics
    majority: Optional[Assignment] = None
    assignment: Optional[Assignment] = None
    partial: Optional[PartialAssignment] = None
    residual: Optional[ResidualFormula] = None
    levels: Dict[int, int] = field(default_factory=dict)
    result: Optional[Assignment] = None

    @property
    def t(self) -> int:
        return self.config.t

    @property
    def failed(self) -> bool:
        return self.diagnostics.failure is not None

    def fail(self, reason: FailureReason) -> None:
        self.diagnostics.failure = reason


class BaseStep(ABC):
    """One step of the pipeline. Subclass and implement run()."""

    name: str = "base"

    @abstractmethod
    def run(self, state: SolveState) -> None:
        """
        Advance ``state`` in place.

        Args:
            state: The attempt's shared state; a step signals failure via state.fail().
        """
        pass
