"""Configuration for the restricted k-SAT toolkit."""

from dataclasses import dataclass, field
from typing import Tuple
import os

from dotenv import load_dotenv

load_dotenv()


@dataclass
class GeneratorSettings:
    """Generator settings."""

    default_k: int = 3
    # "auto" picks dpll for small n and pysat above dpll_max_n
    checker_backend: str = "auto"
    dpll_max_n: int = 40


@dataclass
class SolverSettings:
    """Majority-vote solver defaults."""

    t_sweep_betas: Tuple[float, ...] = (0.05, 0.1, 0.2, 0.4)
    component_cap_factor: int = 3
    reassign_flip_factor: float = 2 / 3
    unassign_factor: float = 1.0


@dataclass
class OracleSettings:
    """Brute-force oracle limits."""

    max_n: int = 26
    cluster_link_distance: int = 1
    exact_radius_limit: int = 1 << 14
    proportional_exhaustive_limit: int = 14
    proportional_subset_budget: int = 1 << 22


@dataclass
class HarnessSettings:
    """Experiment harness settings."""

    workers: int = 1
    output_dir: str = "out"


@dataclass
class AppConfig:
    """Application configuration."""

    generator: GeneratorSettings = None
    solver: SolverSettings = field(default_factory=SolverSettings)
    oracle: OracleSettings = None
    harness: HarnessSettings = None
    log_level: str = "WARNING"
    debug: bool = False

    def __post_init__(self) -> None:
        if self.generator is None:
            self.generator = GeneratorSettings(
                checker_backend=os.environ.get("KSAT_CHECKER", "auto"),
            )
        if self.oracle is None:
            self.oracle = OracleSettings(
                max_n=int(os.environ.get("KSAT_ORACLE_LIMIT", "26")),
            )
        if self.harness is None:
            self.harness = HarnessSettings(
                workers=int(os.environ.get("KSAT_WORKERS", "1")),
                output_dir=os.environ.get("KSAT_OUTPUT_DIR", "out"),
            )


def get_config() -> AppConfig:
    """Return application config (env-aware)."""
    debug = os.environ.get("DEBUG", "").lower() in ("1", "true", "yes")
    return AppConfig(
        log_level=os.environ.get("KSAT_LOG_LEVEL", "DEBUG" if debug else "WARNING").upper(),
        debug=debug,
    )
