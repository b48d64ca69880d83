import time
import warnings
from typing import List, Optional

from ceerlab.CeerLabError import BudgetExceededError
from ceerlab.CeerLabWarning import PropertyViolationWarning
from ceerlab.models import InvariantCheck
from .trace import TraceWriter


def deadline_after(max_seconds: Optional[float]) -> Optional[float]:
    """Monotonic-clock deadline `max_seconds` from now, or None for no limit."""
    if max_seconds is None:
        return None
    return time.monotonic() + max_seconds


def check_deadline(deadline: Optional[float], stage: int, trace: TraceWriter, name: str) -> None:
    if deadline is not None and time.monotonic() > deadline:
        raise BudgetExceededError(
            f"{name} ran out of time at stage {stage}", stage, trace.lines
        )


def record_check(checks: List[InvariantCheck], name: str, failure: Optional[str]) -> None:
    """Append a named check; `failure` is None on success, else the detail."""
    checks.append(InvariantCheck(name=name, passed=failure is None, detail=failure or ""))
    if failure is not None:
        warnings.warn(f"{name}: {failure}", PropertyViolationWarning, stacklevel=3)
