"""
Weak disjoint array construction for ceers with finite classes.

At stage s + 1 let n be least with F_{n,s} covered by the R_s-classes of
F_0, ..., F_{n-1}, and put into F_n the least number in no F_m. For R with
finite classes each F_n eventually stops growing, and the sets
T_n = F_n minus [F_0 u ... u F_{n-1}]_R give a transversal that the array meets
everywhere.
"""

import logging
import warnings
from typing import List, Optional, Sequence

from ceerlab.CeerLabError import CeerLabError
from ceerlab.CeerLabWarning import ClassGrowthWarning
from ceerlab.Ceer.StagedCeer import StagedCeer
from ceerlab.config import DEFAULT_CLASS_CAP
from ceerlab.models import ArrayState, InvariantCheck, StrongArray, TransversalSample, WeakArrayRun
from ceerlab.Transversal.immunity import array_intersection_check
from ceerlab.Transversal.principal import is_transversal_at
from .helpers import check_deadline, record_check
from .trace import TraceWriter, resolve_trace

logger = logging.getLogger(__name__)


def _covered(R: StagedCeer, s: int, members, earlier: Sequence[int]) -> bool:
    return all(any(R.decide_at(s, x, y) for y in earlier) for x in members)


def next_index(state: ArrayState, R: StagedCeer, s: int) -> int:
    """Least n with F_{n,s} inside the R_s-closure of the earlier sets."""
    earlier: List[int] = []
    for n, members in enumerate(state.sets):
        if _covered(R, s, members, earlier):
            return n
        earlier.extend(members)
    return len(state.sets)


def least_fresh(state: ArrayState) -> int:
    support = state.support
    x = 0
    while x in support:
        x += 1
    return x


def weakarray_step(state: ArrayState, R: StagedCeer, stage: int) -> ArrayState:
    """Move `state` (the stage - 1 array) to `stage`."""
    s = stage - 1
    if state.stage != s:
        raise CeerLabError(f"array is at stage {state.stage}, cannot step to {stage}")
    n = next_index(state, R, s)
    x = least_fresh(state)
    sets = list(state.sets)
    if n == len(sets):
        sets.append(frozenset())
    sets[n] = sets[n] | {x}
    return ArrayState(sets=tuple(sets), stage=stage, pick_log=state.pick_log + ((stage, n, x),))


def derived_transversal(state: ArrayState, R: StagedCeer, s: int, upto: int) -> TransversalSample:
    """min T_n for each n < upto with T_n nonempty, T_n computed with R_s."""
    elements: List[int] = []
    earlier: List[int] = []
    for n in range(min(upto, len(state.sets))):
        members = sorted(state.sets[n])
        rest = [x for x in members if not any(R.decide_at(s, x, y) for y in earlier)]
        if rest:
            elements.append(rest[0])
        earlier.extend(members)
    return TransversalSample(elements=tuple(sorted(elements)), stage=s)


def weakarray_run(
    R: StagedCeer,
    S: int,
    trace: Optional[TraceWriter] = None,
    class_cap: int = DEFAULT_CLASS_CAP,
    deadline: Optional[float] = None,
) -> WeakArrayRun:
    """
    Run S stages against R and derive the transversal from the sets not
    covered at stage S. Checks: disjointness at every stage, the derived
    sample is a transversal at stage S, and it meets every such set.
    """
    trace = resolve_trace(trace)
    state = ArrayState()
    disjoint_fault: Optional[str] = None
    warned = False

    for stage in range(1, S + 1):
        check_deadline(deadline, stage, trace, "weakarray")
        state = weakarray_step(state, R, stage)
        _, n, x = state.pick_log[-1]
        trace.pick(stage, n, x)

        if disjoint_fault is None:
            total = sum(len(members) for members in state.sets)
            if total != len(state.support):
                disjoint_fault = f"stage {stage}: sets overlap"

        if not warned:
            size = sum(1 for y in state.support if R.decide_at(stage, x, y))
            if size > class_cap:
                warned = True
                warnings.warn(
                    f"class of {x} holds {size} array elements at stage {stage}, "
                    f"over the cap {class_cap}; the ceer may have an infinite class",
                    ClassGrowthWarning,
                    stacklevel=2,
                )

    stabilized = next_index(state, R, S)
    transversal = derived_transversal(state, R, S, stabilized)

    checks: List[InvariantCheck] = []
    record_check(checks, "array pairwise disjoint", disjoint_fault)
    record_check(
        checks,
        "derived sample is a transversal",
        None if is_transversal_at(R, S, transversal.elements) else "two derived elements are related",
    )
    settled = StrongArray(tuple(state.sets[:stabilized]))
    record_check(
        checks,
        "array meets the transversal",
        None if array_intersection_check(settled, transversal.elements) else "some F_n misses T",
    )
    logger.info("weakarray S=%d: %d set(s), %d stabilized", S, len(state.sets), stabilized)
    return WeakArrayRun(
        state=state,
        transversal=transversal,
        stabilized=stabilized,
        checks=checks,
        trace=trace.lines,
    )
