"""
Transversal extraction from a finitely generated c.e. algebra.

X_0 is the generator set and X_{i+1} adds every value of every operation on
tuples from X_i. Unless the generated subalgebra is finite, each level holds an
element y_i unrelated to all of X_i; the y_i form a transversal of the word
problem whose principal function is majorized by the computable
m(i) = max(X_{i+1}).
"""

import logging
import warnings
from itertools import product
from typing import FrozenSet, List, Optional, Sequence, Set

from ceerlab.CeerLabError import PartialFunctionError
from ceerlab.CeerLabWarning import SubalgebraStalledWarning
from ceerlab.Machine.Machine import Machine, resolve
from ceerlab.Machine.encoding import encode_tuple
from ceerlab.models import AlgebraPresentation, KKExtraction, StrongArray, TransversalSample
from .helpers import check_deadline
from .trace import TraceWriter, resolve_trace

logger = logging.getLogger(__name__)


def next_level(
    A: AlgebraPresentation,
    level: FrozenSet[int],
    budget: int,
    machine: Optional[Machine] = None,
) -> FrozenSet[int]:
    """X_i together with f(x1, ..., xk) for every operation f and tuple from X_i."""
    machine = resolve(machine)
    grown: Set[int] = set(level)
    ordered = sorted(level)
    for op in A.ops:
        divergent: List[int] = []
        for args in product(ordered, repeat=op.arity):
            code = encode_tuple(args)
            value = machine.evaluate(op.program, code, budget)
            if value is None:
                divergent.append(code)
            else:
                grown.add(value)
        if divergent:
            raise PartialFunctionError(op.program, divergent, budget)
    return frozenset(grown)


def kk_extract(
    A: AlgebraPresentation,
    depth: int,
    s: int,
    budget: Optional[int] = None,
    machine: Optional[Machine] = None,
    trace: Optional[TraceWriter] = None,
    deadline: Optional[float] = None,
) -> KKExtraction:
    """
    Generate X_0 .. X_depth and pick y_i, the least element of X_{i+1} not
    =_A-related at stage s to any member of X_i. Generation stops with a
    SubalgebraStalledWarning at the first level that adds no new class.
    Operations get `budget` steps per evaluation, defaulting to s.
    """
    budget = s if budget is None else budget
    trace = resolve_trace(trace)
    levels: List[FrozenSet[int]] = [frozenset(A.generators)]
    trace.level(0, len(levels[0]))
    picks: List[int] = []
    majorizer: List[int] = []
    stalled_at: Optional[int] = None

    for i in range(depth):
        check_deadline(deadline, i, trace, "kk")
        current = levels[-1]
        following = next_level(A, current, budget, machine)
        levels.append(following)
        trace.level(i + 1, len(following))

        fresh = [y for y in sorted(following) if not any(A.wp.decide_at(s, y, x) for x in current)]
        if not fresh:
            stalled_at = i
            warnings.warn(
                f"subalgebra stalled at level {i}: X_{i + 1} adds no new class at stage {s}",
                SubalgebraStalledWarning,
                stacklevel=2,
            )
            break
        picks.append(fresh[0])
        majorizer.append(max(following))

    logger.info("kk extraction: %d level(s), %d pick(s)", len(levels), len(picks))
    return KKExtraction(
        levels=tuple(levels),
        transversal=TransversalSample(elements=tuple(sorted(picks)), stage=s),
        majorizer=tuple(majorizer),
        picks=tuple(picks),
        stalled_at=stalled_at,
    )


def level_array(levels: Sequence[FrozenSet[int]]) -> StrongArray:
    """(X_{i+1} minus X_i)_i, a strong disjoint array the extracted transversal meets."""
    return StrongArray(tuple(levels[i + 1] - levels[i] for i in range(len(levels) - 1)))
