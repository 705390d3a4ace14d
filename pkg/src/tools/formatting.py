"""
Report formatting - plain tables for terminals and JSON for pipelines.

Every criterion entry serializes as {criterion, verdict, margin, tolerance, config}.
"""

import json
from typing import Any, Dict, Iterable, List, Optional

from criteria.report import CriterionReport
from utils.colors import bold, status, verdict_label, yellow

RULE = "=" * 72


def banner(title: str) -> List[str]:
    return [RULE, f"  {bold(title)}", RULE]


def format_number(value: Any) -> str:
    if isinstance(value, bool) or value is None:
        return str(value)
    if isinstance(value, float):
        return f"{value:+.10g}"
    return str(value)


def render_reports(title: str, reports: Iterable[CriterionReport],
                   extra: Optional[Dict[str, Any]] = None) -> str:
    """Criterion table with one line per report."""
    lines = banner(title)
    for key, value in (extra or {}).items():
        lines.append(f"  {key}: {value}")
    lines.append(f"  {'criterion':<14}{'verdict':<16}{'margin':<22}tolerance")
    lines.append("  " + "-" * 66)
    for report in reports:
        # pad before coloring so ANSI codes do not skew the columns
        verdict = verdict_label(report.verdict.value) + " " * (16 - len(report.verdict.value))
        lines.append(f"  {report.criterion:<14}{verdict}{format_number(report.margin):<22}"
                     f"{report.tolerance:g}")
    return "\n".join(lines)


def render_rows(title: str, rows: Iterable[Any]) -> str:
    """Reproduction table: label, expected, computed, tolerance, status."""
    lines = banner(title)
    lines.append(f"  {'check':<46}{'expected':<18}{'computed':<22}{'tol':<10}status")
    lines.append("  " + "-" * 100)
    for row in rows:
        state = yellow("NOTE") if row.note else status(row.passed)
        lines.append(f"  {row.label:<46}{row.expected:<18}{row.computed:<22}"
                     f"{row.tolerance:<10}{state}")
    return "\n".join(lines)


def to_json(document: Dict[str, Any]) -> str:
    return json.dumps(document, indent=2)
