"""Generate an HTML summary from an ExperimentReport."""

from pathlib import Path
from typing import Dict, List

from jinja2 import Environment, FileSystemLoader, select_autoescape

from models import ExperimentReport, ExperimentRow


def _rows_by_point(rows: List[ExperimentRow]) -> Dict[int, List[ExperimentRow]]:
    out: Dict[int, List[ExperimentRow]] = {}
    for r in rows:
        out.setdefault(r.point_index, []).append(r)
    return out


def generate_html_report(report: ExperimentReport) -> str:
    """
    Render the experiment report as HTML.

    Args:
        report: Full ExperimentReport (spec, rows, aggregates).

    Returns:
        HTML string.
    """
    templates_dir = Path(__file__).resolve().parent / "templates"
    env = Environment(
        loader=FileSystemLoader(str(templates_dir)),
        autoescape=select_autoescape(["html", "xml"]),
    )
    template = env.get_template("report.html")

    grouped = _rows_by_point(report.rows)
    failures = [r for r in report.rows if r.error is not None]

    return template.render(
        spec=report.spec,
        analyses=", ".join(report.spec.analyses),
        aggregates=report.aggregates,
        rows_by_point=grouped,
        failures=failures,
        total_rows=len(report.rows),
    )
