"""Shared data models for the generator, oracle, core builder, solver and harness."""

from dataclasses import asdict, dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Tuple

from cnf import Assignment, Clause, clause_universe_size
from errors import InvalidParametersError


class Variant(str, Enum):
    PERM_M = "perm_m"
    COIN_P = "coin_p"
    UNRESTRICTED_P = "unrestricted_p"
    TWO_STEP = "two_step"
    PLANTED = "planted"


class Decision(str, Enum):
    ACCEPTED = "accepted"
    REJECTED = "rejected"
    NOT_DRAWN = "not_drawn"


class CoinMode(str, Enum):
    AUTO = "auto"
    SCAN = "scan"  # coin per clause of a lazily shuffled universe
    BINOMIAL = "binomial"  # X ~ Binomial(M, p), then X distinct clauses


class FailureReason(str, Enum):
    COMPONENT_TOO_LARGE = "component_too_large"
    PROPAGATION_CONFLICT = "propagation_conflict"
    EXHAUSTIVE_UNSAT = "exhaustive_unsat"


class FlipMode(str, Enum):
    BATCH = "batch"
    SEQUENTIAL = "sequential"


def _check_probability(name: str, value: Optional[float]) -> None:
    if value is None:
        raise InvalidParametersError(f"{name} is required for this variant")
    if not 0.0 <= value <= 1.0:
        raise InvalidParametersError(f"{name}={value} is not a probability")


@dataclass
class ProcessConfig:
    """Parameters of one generation run."""

    n: int
    k: int = 3
    variant: Variant = Variant.PERM_M
    m: Optional[int] = None
    p: Optional[float] = None
    p1: Optional[float] = None
    p2: Optional[float] = None
    seed: int = 0
    coin_mode: CoinMode = CoinMode.AUTO
    # two_step: scan F1 then F2 through the acceptance rule
    filter_two_step: bool = True
    # record NOT_DRAWN events for failed coins (scan mode only)
    record_skipped: bool = False
    checker: str = "auto"
    planted: Optional[Assignment] = None

    def __post_init__(self) -> None:
        self.variant = Variant(self.variant)
        self.coin_mode = CoinMode(self.coin_mode)

    @property
    def universe_size(self) -> int:
        return clause_universe_size(self.n, self.k)

    @property
    def derived_p(self) -> Optional[float]:
        """p = p1 + p2 - p1*p2 for the two-step variant."""
        if self.p1 is None or self.p2 is None:
            return None
        return self.p1 + self.p2 - self.p1 * self.p2

    def validate(self) -> None:
        size = self.universe_size
        if self.variant in (Variant.PERM_M, Variant.PLANTED):
            if self.m is None or self.m < 0:
                raise InvalidParametersError("m must be a non-negative clause budget")
            limit = size if self.variant is Variant.PERM_M else ((1 << self.k) - 1) * (size >> self.k)
            if self.m > limit:
                raise InvalidParametersError(f"m={self.m} exceeds the {limit} available clauses")
        elif self.variant in (Variant.COIN_P, Variant.UNRESTRICTED_P):
            _check_probability("p", self.p)
        elif self.variant is Variant.TWO_STEP:
            _check_probability("p1", self.p1)
            _check_probability("p2", self.p2)
        if not 0 <= self.seed < (1 << 64):
            raise InvalidParametersError("seed must be a 64-bit unsigned integer")

    def to_dict(self) -> dict:
        out = {
            "n": self.n,
            "k": self.k,
            "variant": self.variant.value,
            "m": self.m,
            "p": self.p,
            "p1": self.p1,
            "p2": self.p2,
            "derived_p": self.derived_p,
            "seed": self.seed,
            "coin_mode": self.coin_mode.value,
        }
        if self.planted is not None:
            out["planted"] = "".join("1" if v else "0" for v in self.planted.to_list())
        return out


@dataclass(frozen=True)
class TraceEvent:
    clause: Clause
    decision: Decision
    round: int = 1


@dataclass
class GenerationTrace:
    """Ordered accept/reject history of a restricted process."""

    events: List[TraceEvent] = field(default_factory=list)
    witness: Optional[Assignment] = None
    rng_seed: int = 0
    accepted: int = 0
    rejected: int = 0
    scanned: int = 0
    coin_successes: Optional[int] = None
    derived_p: Optional[float] = None

    def record(self, clause: Clause, decision: Decision, round: int = 1) -> None:
        self.events.append(TraceEvent(clause, decision, round))
        if decision is Decision.ACCEPTED:
            self.accepted += 1
            self.scanned += 1
        elif decision is Decision.REJECTED:
            self.rejected += 1
            self.scanned += 1

    def accepted_clauses(self) -> List[Clause]:
        return [e.clause for e in self.events if e.decision is Decision.ACCEPTED]

    def rejected_clauses(self) -> List[Clause]:
        return [e.clause for e in self.events if e.decision is Decision.REJECTED]

    def counts(self) -> Dict[str, int]:
        return {"accepted": self.accepted, "rejected": self.rejected, "scanned": self.scanned}


@dataclass(frozen=True)
class CoreParams:
    """Threshold t and the multipliers of the expanding-set and core procedures."""

    t: int
    init_factor: Fraction = Fraction(502, 500)
    keep_factor: Fraction = Fraction(1)
    core_out_factor: Fraction = Fraction(1, 11)
    core_support_factor: Fraction = Fraction(10, 11)

    def __post_init__(self) -> None:
        for name in ("init_factor", "keep_factor", "core_out_factor", "core_support_factor"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.t < 1:
            raise InvalidParametersError("t must be a positive integer")
        factors = (self.init_factor, self.keep_factor, self.core_out_factor, self.core_support_factor)
        if any(f <= 0 for f in factors):
            raise InvalidParametersError("all threshold factors must be positive")
        if self.keep_factor > self.init_factor:
            raise InvalidParametersError("keep_factor must not exceed init_factor")
        if self.core_support_factor >= 1:
            raise InvalidParametersError("core_support_factor must be below 1")

    @property
    def init_threshold(self) -> Fraction:
        return self.init_factor * self.t

    @property
    def keep_threshold(self) -> Fraction:
        return self.keep_factor * self.t

    @property
    def core_out_threshold(self) -> Fraction:
        return self.core_out_factor * self.t

    @property
    def core_support_threshold(self) -> Fraction:
        return self.core_support_factor * self.t


@dataclass
class CoreReport:
    """Expanding set, core, satellites and what is left outside them."""

    Z: FrozenSet[int]
    H: FrozenSet[int]
    S: FrozenSet[int]
    t: int
    residual_components: List[int]
    psi: Assignment
    satellite_levels: Dict[int, int] = field(default_factory=dict)
    proportional: Optional[bool] = None

    @property
    def covered(self) -> FrozenSet[int]:
        return self.H | self.S

    @property
    def coverage(self) -> float:
        n = len(self.psi)
        return len(self.covered) / n if n else 1.0

    @property
    def largest_component(self) -> int:
        return max(self.residual_components, default=0)

    def to_dict(self) -> dict:
        histogram: Dict[int, int] = {}
        for size in self.residual_components:
            histogram[size] = histogram.get(size, 0) + 1
        return {
            "t": self.t,
            "Z": sorted(self.Z),
            "H": sorted(self.H),
            "S": sorted(self.S),
            "satellite_levels": {str(v): lvl for v, lvl in sorted(self.satellite_levels.items())},
            "coverage": self.coverage,
            "residual_component_histogram": {str(s): c for s, c in sorted(histogram.items())},
            "largest_component": self.largest_component,
            "proportional": self.proportional,
        }


@dataclass
class CoreDrift:
    """Core of a first-round formula against the core of the full formula."""

    first_core: FrozenSet[int]
    full_core: FrozenSet[int]
    satellites: FrozenSet[int]

    @property
    def drift(self) -> FrozenSet[int]:
        return self.first_core - self.full_core

    @property
    def drift_in_satellites(self) -> bool:
        return self.drift <= self.satellites

    def to_dict(self) -> dict:
        return {
            "first_core": len(self.first_core),
            "full_core": len(self.full_core),
            "drift": sorted(self.drift),
            "drift_in_satellites": self.drift_in_satellites,
        }


@dataclass
class SolverConfig:
    """Parameters of the majority-vote solver."""

    t: int = 1
    reassign_iters: Optional[int] = None  # default ceil(log2 n)
    reassign_flip_factor: float = 2 / 3
    unassign_factor: float = 1.0
    component_cap: Optional[int] = None  # default c_cap * ceil(log2 n)
    c_cap: int = 3
    t_sweep: Optional[Tuple[int, ...]] = None
    flip_mode: FlipMode = FlipMode.BATCH
    fallback_complete: bool = False

    def __post_init__(self) -> None:
        self.flip_mode = FlipMode(self.flip_mode)
        if self.t < 1:
            raise InvalidParametersError("t must be at least 1")
        if self.component_cap is not None and self.component_cap < 1:
            raise InvalidParametersError("component_cap must be at least 1")
        if self.t_sweep is not None:
            self.t_sweep = tuple(int(t) for t in self.t_sweep)
            if not self.t_sweep or min(self.t_sweep) < 1:
                raise InvalidParametersError("t_sweep values must be positive")


@dataclass
class StageDiagnostics:
    """Per-step counters of one solver attempt."""

    t: int
    majority_true: int = 0
    majority_disagreement: Optional[int] = None
    flips_per_round: List[int] = field(default_factory=list)
    unassigned: int = 0
    residual_clauses: int = 0
    propagation_rounds: int = 0
    propagated: int = 0
    component_sizes: List[int] = field(default_factory=list)
    failure: Optional[FailureReason] = None


@dataclass
class SolveOutcome:
    """Result of solve(); ``assignment`` is only ever a verified satisfying assignment."""

    assignment: Optional[Assignment]
    failure: Optional[FailureReason] = None
    stages: List[StageDiagnostics] = field(default_factory=list)
    t_used: Optional[int] = None
    fallback_used: bool = False

    @property
    def success(self) -> bool:
        return self.assignment is not None

    def to_dict(self) -> dict:
        stages = []
        for s in self.stages:
            d = asdict(s)
            d["failure"] = s.failure.value if s.failure else None
            stages.append(d)
        return {
            "success": self.success,
            "failure": self.failure.value if self.failure else None,
            "t_used": self.t_used,
            "fallback_used": self.fallback_used,
            "assignment": (
                "".join("1" if v else "0" for v in self.assignment.to_list())
                if self.assignment is not None
                else None
            ),
            "stages": stages,
        }


@dataclass
class SolutionSpaceSummary:
    """Brute-force picture of all satisfying assignments."""

    n: int
    beta: int
    frozen: Dict[int, bool]
    concentration_radius: int
    entropy: Optional[float]
    clusters: List[List[Assignment]]
    cluster_sizes: List[int] = field(default_factory=list)
    radius_exact: bool = True

    @property
    def frozen_fraction(self) -> float:
        return len(self.frozen) / self.n if self.n else 0.0

    def to_dict(self) -> dict:
        return {
            "beta": self.beta,
            "frozen": {str(v): val for v, val in sorted(self.frozen.items())},
            "radius": self.concentration_radius,
            "radius_exact": self.radius_exact,
            "entropy": self.entropy,
            "clusters": list(self.cluster_sizes),
        }


@dataclass
class EvolveSnapshot:
    """Process state after the first m scanned clauses."""

    m: int
    ratio: float
    accepted: int
    rejected: int
    beta: Optional[int] = None
    frozen_fraction: Optional[float] = None
    radius: Optional[int] = None
    entropy: Optional[float] = None
    clusters: Optional[int] = None


@dataclass
class ProportionalityReport:
    """Outcome of a search for a dense small variable set."""

    rho: float
    size_cap: int
    violating_set: Optional[FrozenSet[int]] = None
    violating_count: Optional[int] = None
    exhaustive: bool = True

    @property
    def proportional(self) -> bool:
        return self.violating_set is None


@dataclass(frozen=True)
class GridPoint:
    n: int
    k: int = 3
    ratio: Optional[float] = None
    p: Optional[float] = None

    def label(self) -> str:
        density = f"ratio={self.ratio:g}" if self.ratio is not None else f"p={self.p:g}"
        return f"n={self.n},k={self.k},{density}"


ANALYSES = ("solve", "oracle", "core", "evolve", "two_step_test", "core_drift")


@dataclass
class ExperimentSpec:
    grid: List[GridPoint]
    trials: int = 10
    master_seed: int = 0
    analyses: Tuple[str, ...] = ("solve",)
    oracle_limit: int = 26
    t_sweep: Optional[Tuple[int, ...]] = None
    workers: int = 1
    two_step_samples: int = 2000
    output_csv: Optional[str] = None
    output_json: Optional[str] = None
    output_html: Optional[str] = None

    def validate(self) -> None:
        if self.trials < 1:
            raise InvalidParametersError("trials must be at least 1")
        if not self.grid:
            raise InvalidParametersError("experiment grid is empty")
        unknown = set(self.analyses) - set(ANALYSES)
        if unknown:
            raise InvalidParametersError(f"unknown analyses: {sorted(unknown)}")
        for point in self.grid:
            if (point.ratio is None) == (point.p is None):
                raise InvalidParametersError(f"{point.label()}: give exactly one of ratio or p")
            if "oracle" in self.analyses and point.n > self.oracle_limit:
                raise InvalidParametersError(
                    f"oracle analysis refused at n={point.n} (limit {self.oracle_limit})"
                )


@dataclass
class ExperimentRow:
    point_index: int
    trial: int
    seed: int
    n: int
    k: int
    m: int
    accepted: int = 0
    rejected: int = 0
    solve_success: Optional[bool] = None
    solve_failure: Optional[str] = None
    t_used: Optional[int] = None
    maj_disagreement: Optional[float] = None
    beta: Optional[int] = None
    frozen_fraction: Optional[float] = None
    radius: Optional[int] = None
    entropy: Optional[float] = None
    clusters: Optional[int] = None
    core_size: Optional[int] = None
    satellite_size: Optional[int] = None
    coverage: Optional[float] = None
    largest_component: Optional[int] = None
    core_drift: Optional[int] = None
    drift_in_satellites: Optional[bool] = None
    evolve_monotone: Optional[bool] = None
    error: Optional[str] = None
    generate_seconds: Optional[float] = None
    solve_seconds: Optional[float] = None


@dataclass
class ExperimentReport:
    spec: ExperimentSpec
    rows: List[ExperimentRow]
    aggregates: List[dict] = field(default_factory=list)
