"""
CLI for the restricted k-SAT toolkit.

Usage:
  python cli.py generate --n 100 --k 3 --ratio 60 --seed 7 --out f100
  python cli.py solve f100.cnf --t-sweep 3,6,12
  python cli.py analyze small.cnf --oracle-limit 22
  python cli.py evolve --n 16 --ratios 1:20 --seed 3 --out evolve.csv
  python cli.py two-step-test --n 4 --p 0.3 --samples 20000
  python cli.py experiment grid.json --csv rows.csv --json report.json --html report.html
  python cli.py bench --ns 500,1000,2000 --ratio 60
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

# Ensure project root is on path when run as script
sys.path.insert(0, str(Path(__file__).resolve().parent))

from cnf import Formula, dimacs_read, dimacs_write
from config import get_config
from errors import DimacsParseError, KSatError
from experiments import (
    bench,
    evolve,
    load_spec,
    matched_split,
    run_experiment,
    snapshots_at_ratios,
    two_step_test,
)
from models import CoinMode, CoreParams, FlipMode, ProcessConfig, SolverConfig, Variant
from oracle import majority_disagreement, summarize_solution_space
from process import checker_names, generate, solve_complete, trace_to_jsonl, with_planted
from report import generate_html_report, write_report_json, write_rows_csv, write_snapshots_csv
from solver import default_t_sweep, solve
from structure import best_report, sweep_t

logger = logging.getLogger("cli")

EXIT_SOLVER_FAILURE = 1
EXIT_CONFIG_ERROR = 2
EXIT_IO_ERROR = 3


class SolverFailed(Exception):
    pass


def _int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _ratio_range(text: str) -> List[float]:
    """'1:20' -> 1..20 step 1, 'a:b:s' with step, or a comma list."""
    try:
        if ":" in text:
            parts = [float(x) for x in text.split(":")]
            start, stop = parts[0], parts[1]
            step = parts[2] if len(parts) > 2 else 1.0
            out, value = [], start
            while value <= stop + 1e-9:
                out.append(round(value, 9))
                value += step
            return out
        return [float(x) for x in text.split(",") if x.strip()]
    except (ValueError, IndexError):
        raise argparse.ArgumentTypeError(f"bad ratio list {text!r}") from None


def _read_formula(path: Path) -> Formula:
    formula = dimacs_read(path.read_text(encoding="utf-8"))
    if not isinstance(formula, Formula):
        raise DimacsParseError(f"{path}: clauses must all have the same width")
    return formula


def _emit(text: str, out: Optional[Path]) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    out.write_text(text, encoding="utf-8")
    logger.info("wrote %s", out)


def _solver_config(args: argparse.Namespace, formula: Formula) -> SolverConfig:
    if args.t_sweep:
        sweep = tuple(args.t_sweep)
    elif args.t is not None:
        sweep = (args.t,)
    else:
        sweep = default_t_sweep(formula)
    return SolverConfig(
        t=sweep[0],
        t_sweep=sweep,
        flip_mode=FlipMode(args.flip_mode),
        fallback_complete=args.fallback,
        component_cap=args.component_cap,
    )


def cmd_generate(args: argparse.Namespace) -> int:
    variant = Variant(args.variant)
    m = args.m
    if m is None and args.ratio is not None:
        m = int(round(args.ratio * args.n))
    p1, p2 = args.p1, args.p2
    if variant is Variant.TWO_STEP and p2 is None and args.p is not None:
        p1, p2 = matched_split(args.p, p1)
    config = ProcessConfig(
        n=args.n,
        k=args.k,
        variant=variant,
        m=m,
        p=args.p,
        p1=p1,
        p2=p2,
        seed=args.seed,
        coin_mode=CoinMode(args.coin_mode),
        checker=args.checker,
    )
    config = with_planted(config)
    formula, trace = generate(config)
    comments = [f"{key}={value}" for key, value in config.to_dict().items() if value is not None]
    trace_path = args.trace
    if args.format == "json":
        document = {
            "config": config.to_dict(),
            "clauses": [c.to_dimacs() for c in formula.clauses],
            "counts": trace.counts() if trace is not None else None,
        }
        _emit(json.dumps(document, indent=2) + "\n", args.out)
    elif args.out is None:
        _emit(dimacs_write(formula, comments), None)
    else:
        base = args.out.with_suffix("") if args.out.suffix == ".cnf" else args.out
        _emit(dimacs_write(formula, comments), base.with_suffix(".cnf"))
        trace_path = trace_path or Path(f"{base}.trace.jsonl")
        print(f"Wrote {formula.m} clauses to {base.with_suffix('.cnf')}", file=sys.stderr)
    if trace is not None and trace_path is not None:
        _emit(trace_to_jsonl(trace, config), trace_path)
    return 0


def cmd_solve(args: argparse.Namespace) -> int:
    formula = _read_formula(args.file)
    outcome = solve(formula, _solver_config(args, formula))
    _emit(json.dumps(outcome.to_dict(), indent=2) + "\n", args.out)
    if not outcome.success:
        raise SolverFailed(outcome.failure.value if outcome.failure else "no assignment")
    return 0


def cmd_analyze(args: argparse.Namespace) -> int:
    formula = _read_formula(args.file)
    settings = get_config().generator
    psi = solve_complete(formula, args.checker, settings.dpll_max_n)
    document: dict = {"n": formula.n, "k": formula.k, "m": formula.m, "satisfiable": psi is not None}
    try:
        document["oracle"] = summarize_solution_space(formula, limit=args.oracle_limit).to_dict()
        document["maj_disagreement"] = majority_disagreement(formula, limit=args.oracle_limit)
    except KSatError as exc:
        logger.warning("oracle skipped: %s", exc)
        document["oracle"] = {"error": str(exc)}
    if psi is not None:
        ts = args.t_sweep or ([args.t] if args.t is not None else default_t_sweep(formula))
        best = best_report(sweep_t(formula, psi, ts, CoreParams(t=1)))
        document["core"] = best.to_dict()
    _emit(json.dumps(document, indent=2) + "\n", args.out)
    return 0


def cmd_evolve(args: argparse.Namespace) -> int:
    snapshots = snapshots_at_ratios(args.n, args.ratios)
    rows = evolve(
        args.n,
        args.k,
        args.seed,
        snapshots,
        oracle=not args.no_oracle,
        oracle_limit=args.oracle_limit,
        checker=args.checker,
    )
    if args.out is None:
        write_snapshots_csv(rows, sys.stdout)
    else:
        write_snapshots_csv(rows, args.out)
        print(f"Wrote {len(rows)} snapshots to {args.out}", file=sys.stderr)
    return 0


def cmd_two_step_test(args: argparse.Namespace) -> int:
    report = two_step_test(
        n=args.n, k=args.k, p=args.p, p1=args.p1, p2=args.p2,
        samples=args.samples, seed=args.seed, checker=args.checker,
    )
    _emit(json.dumps(report.to_dict(), indent=2) + "\n", args.out)
    return 0


def cmd_experiment(args: argparse.Namespace) -> int:
    spec = load_spec(args.spec)
    if args.workers is not None:
        spec.workers = args.workers
    spec.output_csv = str(args.csv) if args.csv else spec.output_csv
    spec.output_json = str(args.json) if args.json else spec.output_json
    spec.output_html = str(args.html) if args.html else spec.output_html
    report = run_experiment(spec)
    if spec.output_csv:
        write_rows_csv(report.rows, spec.output_csv)
    if spec.output_json:
        write_report_json(report, spec.output_json)
    if spec.output_html:
        Path(spec.output_html).write_text(generate_html_report(report), encoding="utf-8")
    if not (spec.output_csv or spec.output_json or spec.output_html):
        sys.stdout.write(json.dumps(report.aggregates, indent=2) + "\n")
    errors = sum(1 for r in report.rows if r.error)
    print(f"Experiment done: {len(report.rows)} rows, {errors} with errors", file=sys.stderr)
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    points = bench(args.ns, args.ratio, k=args.k, trials=args.trials, seed=args.seed, checker=args.checker)
    _emit(json.dumps([p.to_dict() for p in points], indent=2) + "\n", args.out)
    return 0


def _add_common(parser: argparse.ArgumentParser, n_required: bool = False, with_n: bool = True) -> None:
    if with_n:
        parser.add_argument("--n", type=int, required=n_required, default=None if n_required else 4)
    parser.add_argument("--k", type=int, default=get_config().generator.default_k)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--checker", choices=checker_names(), default="auto")


def _add_solver_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--t", type=int, default=None, help="Single threshold t")
    parser.add_argument("--t-sweep", type=_int_list, default=None, help="Comma-separated t values to try in order")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Restricted random k-SAT: generate, solve and analyze satisfiable formulas."
    )
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="Run a clause process and write DIMACS + trace")
    _add_common(p, n_required=True)
    p.add_argument("--variant", choices=[v.value for v in Variant], default=Variant.PERM_M.value)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--ratio", type=float, default=None, help="m/n; sets m when --m is absent")
    p.add_argument("--p", type=float, default=None)
    p.add_argument("--p1", type=float, default=None)
    p.add_argument("--p2", type=float, default=None)
    p.add_argument("--coin-mode", choices=[c.value for c in CoinMode], default=CoinMode.AUTO.value)
    p.add_argument("--format", choices=("dimacs", "json"), default="dimacs")
    p.add_argument("--out", "-o", type=Path, default=None, help="Output path (default: stdout)")
    p.add_argument("--trace", type=Path, default=None, help="Trace JSON-lines path (default: <out>.trace.jsonl when --out is given)")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("solve", help="Run the majority-vote solver on a DIMACS file")
    p.add_argument("file", type=Path)
    _add_solver_flags(p)
    p.add_argument("--flip-mode", choices=[f.value for f in FlipMode], default=FlipMode.BATCH.value)
    p.add_argument("--component-cap", type=int, default=None)
    p.add_argument("--fallback", action="store_true", help="Fall back to the complete checker on failure")
    p.add_argument("--format", choices=("json",), default="json")
    p.add_argument("--out", "-o", type=Path, default=None)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("analyze", help="Oracle summary and core report for a DIMACS file")
    p.add_argument("file", type=Path)
    _add_solver_flags(p)
    p.add_argument("--oracle-limit", type=int, default=None)
    p.add_argument("--checker", choices=checker_names(), default="auto")
    p.add_argument("--out", "-o", type=Path, default=None)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("evolve", help="Snapshots of the permutation process as CSV")
    _add_common(p, n_required=True)
    p.add_argument("--ratios", type=_ratio_range, default=_ratio_range("1:20"), help="e.g. 1:20 or 1:20:0.5 or 1,2,5")
    p.add_argument("--no-oracle", action="store_true")
    p.add_argument("--oracle-limit", type=int, default=None)
    p.add_argument("--format", choices=("csv",), default="csv")
    p.add_argument("--out", "-o", type=Path, default=None)
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("two-step-test", help="Chi-square check of the two-round process")
    _add_common(p)
    p.add_argument("--p", type=float, default=0.3)
    p.add_argument("--p1", type=float, default=None)
    p.add_argument("--p2", type=float, default=None)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--out", "-o", type=Path, default=None)
    p.set_defaults(func=cmd_two_step_test)

    p = sub.add_parser("experiment", help="Run an experiment grid from a JSON spec")
    p.add_argument("spec", type=Path)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--csv", type=Path, default=None)
    p.add_argument("--json", type=Path, default=None)
    p.add_argument("--html", type=Path, default=None)
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("bench", help="Solve wall-clock across n at a fixed ratio")
    _add_common(p, with_n=False)
    p.add_argument("--ns", type=_int_list, default=[500, 1000, 2000])
    p.add_argument("--ratio", type=float, default=60.0)
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--format", choices=("json",), default="json")
    p.add_argument("--out", "-o", type=Path, default=None)
    p.set_defaults(func=cmd_bench)
    return parser


def _configure_logging(verbosity: int) -> None:
    if verbosity >= 2:
        level = logging.DEBUG
    elif verbosity == 1:
        level = logging.INFO
    else:
        level = getattr(logging, get_config().log_level, logging.WARNING)
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)

    try:
        return args.func(args)
    except SolverFailed as e:
        print(f"{args.command} failed: {e}", file=sys.stderr)
        return EXIT_SOLVER_FAILURE
    except (DimacsParseError, OSError) as e:
        print(f"{args.command} failed: {e}", file=sys.stderr)
        return EXIT_IO_ERROR
    except KSatError as e:
        print(f"{args.command} failed: {e}", file=sys.stderr)
        return EXIT_CONFIG_ERROR


if __name__ == "__main__":
    sys.exit(main())
