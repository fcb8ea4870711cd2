"""Report generation: HTML summary plus CSV/JSON writers."""

from .generator import generate_html_report
from .writers import (
    CSV_SCHEMA_VERSION,
    ROW_COLUMNS,
    TIMING_COLUMNS,
    report_to_dict,
    write_report_json,
    write_rows_csv,
    write_snapshots_csv,
)

__all__ = [
    "generate_html_report",
    "CSV_SCHEMA_VERSION",
    "ROW_COLUMNS",
    "TIMING_COLUMNS",
    "report_to_dict",
    "write_report_json",
    "write_rows_csv",
    "write_snapshots_csv",
]
