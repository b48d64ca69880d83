"""
ceerlab configuration - defaults and environment overrides.

Precedence is: command-line flag > environment variable > default below.
"""

import os
from typing import Optional

from ceerlab.CeerLabError import CeerLabError


# =============================================================================
# Defaults
# =============================================================================

DEFAULT_STAGES = 1000  # stage budget S for constructions
DEFAULT_HORIZON = 500  # horizon N for class / transversal queries
DEFAULT_CAP = 10000  # visited-set cap for congruence closures

# Step budget when a program is evaluated as a total function
# (reductions, array transport, algebra operations).
DEFAULT_EVAL_BUDGET = 100_000

DEFAULT_CONVERGENCE_STAGE = 1000  # restrict(): flag inputs still divergent here
DEFAULT_CLASS_CAP = 64  # weakarray: class-growth warning threshold
DEFAULT_QUIESCENCE = 100  # allhigh: "quiescent in the last K stages"

# Cache bounds; evicted entries are recomputed on demand.
DEFAULT_MAX_RUNS = 200_000  # Machine: resumable (program, input) runs kept
DEFAULT_STAGE_CACHE = 256  # FromPairs: stages whose union-find closure is kept

STAGES_ENV = "CEERLAB_STAGES"
HORIZON_ENV = "CEERLAB_HORIZON"


def _read_natural(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or not raw.strip():
        return default
    try:
        value = int(raw.strip())
    except ValueError:
        raise CeerLabError(f"{name} must be a natural number, got {raw!r}")
    if value < 0:
        raise CeerLabError(f"{name} must be a natural number, got {raw!r}")
    return value


def get_stages(override: Optional[int] = None) -> int:
    """Stage budget: explicit override, then $CEERLAB_STAGES, then the default."""
    if override is not None:
        return override
    return _read_natural(STAGES_ENV, DEFAULT_STAGES)


def get_horizon(override: Optional[int] = None) -> int:
    """Horizon: explicit override, then $CEERLAB_HORIZON, then the default."""
    if override is not None:
        return override
    return _read_natural(HORIZON_ENV, DEFAULT_HORIZON)
