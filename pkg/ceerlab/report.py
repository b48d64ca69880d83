"""
Plain-text rendering of RunReport records.

Field order is fixed: command, construction, stages, horizon, then the
results in insertion order, the checks and the trace path. Nothing depends
on the clock, so identical runs give byte-identical reports.
"""

from typing import Any, List

from ceerlab.models import RunReport


def format_value(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "none"
    if isinstance(value, (list, tuple, frozenset, set)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return " ".join(format_value(v) for v in items)
    return str(value)


def _format_field(key: str, value: Any) -> List[str]:
    if isinstance(value, dict):
        lines = [f"{key}:"]
        lines.extend(f"  {k}: {format_value(v)}" for k, v in value.items())
        return lines
    if isinstance(value, list) and value and isinstance(value[0], dict):
        lines = [f"{key}:"]
        for row in value:
            lines.append("  " + " ".join(f"{k}={format_value(v)}" for k, v in row.items()))
        return lines
    return [f"{key}: {format_value(value)}"]


def format_report(report: RunReport) -> str:
    lines = [
        f"command: {report.command}",
        f"construction: {report.construction}",
        f"stages: {report.stages}",
        f"horizon: {report.horizon}",
    ]
    for key, value in report.results.items():
        lines.extend(_format_field(key, value))
    lines.append("checks:")
    for check in report.checks:
        status = "pass" if check.passed else "FAIL"
        detail = f" ({check.detail})" if check.detail else ""
        lines.append(f"  {check.name}: {status}{detail}")
    lines.append(f"trace: {report.trace_path or 'none'}")
    return "\n".join(lines) + "\n"
