"""Composition of the structural procedures into a CoreReport, plus t sweeps."""

import logging
from dataclasses import replace
from typing import Iterable, List, Optional

from cnf import Assignment, Formula, clause_components, restrict_and_simplify, satisfies
from errors import ContractViolationError
from models import CoreDrift, CoreParams, CoreReport
from oracle.proportional import check_proportional

from .core import build_core
from .expanding import build_expanding_set
from .satellites import satellite_closure

logger = logging.getLogger(__name__)


def analyze_structure(
    formula: Formula,
    psi: Assignment,
    params: CoreParams,
    proportional_cap: Optional[int] = None,
) -> CoreReport:
    """Expanding set, core, satellites and the residual components of F_out(H+S, psi).

    With ``proportional_cap`` the formula is also checked for proportionality at
    rho = t/10 over sets of at most that size.
    """
    if not satisfies(formula, psi):
        raise ContractViolationError("reference assignment does not satisfy the formula")
    Z = build_expanding_set(formula, psi, params)
    H = build_core(formula, Z, psi, params)
    S, levels = satellite_closure(formula, H, psi)
    residual = restrict_and_simplify(formula, H | S, psi)
    # width-1 residual clauses still form their own component
    components = [len(variables) for variables, _ in clause_components(residual)]
    proportional = None
    if proportional_cap is not None:
        proportional = check_proportional(formula, params.t / 10, proportional_cap).proportional
    report = CoreReport(
        Z=Z,
        H=H,
        S=S,
        t=params.t,
        residual_components=components,
        psi=psi,
        satellite_levels=levels,
        proportional=proportional,
    )
    logger.info(
        "t=%d |Z|=%d |H|=%d |S|=%d coverage=%.3f largest residual=%d",
        params.t,
        len(Z),
        len(H),
        len(S),
        report.coverage,
        report.largest_component,
    )
    return report


def sweep_t(
    formula: Formula, psi: Assignment, ts: Iterable[int], params: Optional[CoreParams] = None
) -> List[CoreReport]:
    """One report per t, other factors taken from ``params``."""
    base = params or CoreParams(t=1)
    return [analyze_structure(formula, psi, replace(base, t=int(t))) for t in ts]


def best_report(reports: Iterable[CoreReport]) -> Optional[CoreReport]:
    """Largest coverage; ties go to the smaller largest residual component, then smaller t."""
    candidates = list(reports)
    if not candidates:
        return None
    return min(candidates, key=lambda r: (-len(r.covered), r.largest_component, r.t))


def core_drift(first: Formula, full: Formula, psi: Assignment, params: CoreParams) -> CoreDrift:
    """Compare the core of a first-round formula with the core (and satellites) of the full one."""
    if not satisfies(full, psi):
        raise ContractViolationError("reference assignment does not satisfy the formula")
    first_core = build_core(first, build_expanding_set(first, psi, params), psi, params)
    full_core = build_core(full, build_expanding_set(full, psi, params), psi, params)
    satellites, _ = satellite_closure(full, full_core, psi)
    drift = CoreDrift(first_core=first_core, full_core=full_core, satellites=satellites)
    logger.info(
        "core drift: |H1|=%d |H|=%d |H1\\H|=%d within satellites=%s",
        len(first_core),
        len(full_core),
        len(drift.drift),
        drift.drift_in_satellites,
    )
    return drift
