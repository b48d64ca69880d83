"""
Interval priority construction: a ceer with finite classes whose principal
transversal dominates every partial computable function.

The classes are consecutive closed intervals I_0, I_1, ... At stage 0 every
interval is a singleton. Requirement e requires attention at stage s + 1 when

    f_{s+1}(e) = max({0} u {phi_{i,s+1}(j) : i, j <= e}) > max(I_{e,s})

and the least such e acts: I_e grows to [min(I_{e,s}), s] and every later
interval is reset to a singleton, I_{j,s+1} = {s + j - e}. In the limit
lo_{e+1} = p_T(e + 1) exceeds f(e) for every e.
"""

import logging
from bisect import bisect_right
from collections import defaultdict
from dataclasses import replace
from itertools import accumulate
from typing import Dict, List, Optional, Sequence, Tuple

from ceerlab.CeerLabError import CeerLabError
from ceerlab.Ceer.StagedCeer import StagedCeer
from ceerlab.config import DEFAULT_QUIESCENCE
from ceerlab.Machine.Machine import Machine, resolve
from ceerlab.models import (
    AllHighAction,
    AllHighRun,
    Constructed,
    IntervalPartition,
    InvariantCheck,
)
from .helpers import check_deadline, record_check
from .trace import TraceWriter, resolve_trace

logger = logging.getLogger(__name__)


def f_stage(e: int, s: int, machine: Optional[Machine] = None) -> int:
    """max({0} u {phi_stage(i, j, s) : i, j <= e})."""
    machine = resolve(machine)
    best = 0
    for i in range(e + 1):
        for j in range(e + 1):
            v = machine.phi_stage(i, j, s)
            if v is not None and v > best:
                best = v
    return best


class FTable:
    """
    f_stage(e, s) for every e <= S and s <= S + lookahead, advanced one
    stage at a time.

    Each pair (i, j) with i, j <= S is run once to find the first stage at
    which phi_{i,s}(j) is defined; f is then a running prefix maximum.
    """

    def __init__(
        self,
        S: int,
        machine: Machine,
        deadline=None,
        trace: Optional[TraceWriter] = None,
        lookahead: int = 0,
    ):
        self.S = S
        self.horizon = S + lookahead
        self.stage = 0
        self._best = [0] * (S + 1)
        self._events: Dict[int, List[Tuple[int, int]]] = defaultdict(list)
        trace = resolve_trace(trace)
        for i in range(S + 1):
            check_deadline(deadline, 0, trace, "allhigh")
            for j in range(S + 1):
                hit = machine.convergence(i, j, self.horizon)
                if hit is not None:
                    first, value = hit
                    self._events[first].append((max(i, j), value))
        logger.info("f table for S=%d: %d convergent pairs", S, sum(map(len, self._events.values())))

    def advance(self, s: int) -> List[int]:
        """f_stage(e, s) for e = 0..S; stages must not go backwards."""
        if s > self.horizon:
            raise CeerLabError(f"f table only reaches stage {self.horizon}, asked for {s}")
        if s < self.stage:
            raise CeerLabError(f"f table is at stage {self.stage}, cannot rewind to {s}")
        for t in range(self.stage + 1, s + 1):
            for m, value in self._events.get(t, ()):
                if value > self._best[m]:
                    self._best[m] = value
        self.stage = s
        return list(accumulate(self._best, max))


def initial_partition() -> IntervalPartition:
    """Stage 0: I_j = {j} for every j."""
    return IntervalPartition()


def allhigh_step(
    state: IntervalPartition,
    stage: int,
    f_values: Optional[Sequence[int]] = None,
    machine: Optional[Machine] = None,
) -> IntervalPartition:
    """
    Move `state` (the stage - 1 partition) to `stage`.

    f_values[e] must be f_stage(e, stage) for e < stage; it is computed
    directly when omitted.
    """
    s = stage - 1
    if state.stage != s:
        raise CeerLabError(f"partition is at stage {state.stage}, cannot step to {stage}")
    if f_values is None:
        f_values = [f_stage(e, stage, machine) for e in range(stage)]

    for e in range(s + 1):
        hi = state.hi(e)
        if f_values[e] <= hi:
            continue
        lo = state.lo(e)
        # f_values[e] < stage, so hi < s and [lo, s] is a proper extension
        prefix = tuple(state.interval(j) for j in range(e))
        action = AllHighAction(stage=stage, requirement=e, f_value=f_values[e], hi_before=hi, hi_after=s)
        return IntervalPartition(intervals=prefix + ((lo, s),), stage=stage, log=state.log + (action,))

    return replace(state, stage=stage)


class IntervalHistoryCeer(StagedCeer):
    """R_s = interval co-membership in the recorded stage-s partition."""

    def __init__(self, history: Sequence[IntervalPartition]):
        super().__init__(Constructed("allhigh"))
        # only stages where the partition changed are kept
        self._stages: List[int] = []
        self._versions: List[Tuple[List[int], int]] = []  # (interval los, tail start)
        last = None
        for partition in history:
            if self._versions and partition.intervals == last:
                continue
            last = partition.intervals
            self._stages.append(partition.stage)
            self._versions.append(([lo for lo, _ in partition.intervals], partition.tail_start))

    def _related(self, s: int, x: int, y: int) -> bool:
        k = bisect_right(self._stages, s) - 1
        if k < 0:
            return False
        los, tail = self._versions[k]
        if x >= tail or y >= tail:
            return False
        return bisect_right(los, x) == bisect_right(los, y)


def _partition_failure(partition: IntervalPartition) -> Optional[str]:
    expected = 0
    for j, (lo, hi) in enumerate(partition.intervals):
        if lo != expected or hi < lo:
            return f"interval {j} is [{lo}, {hi}], expected to start at {expected}"
        if hi >= partition.stage and hi != lo:
            return f"stage {partition.stage}: interval {j} = [{lo}, {hi}] holds a number >= the stage"
        expected = hi + 1
    return None


def _coarsening_failure(old: IntervalPartition, new: IntervalPartition) -> Optional[str]:
    for lo, _ in new.intervals:
        if old.lo(old.index_of(lo)) != lo:
            return f"stage {new.stage}: boundary {lo} is not a stage-{old.stage} boundary"
    return None


def allhigh_run(
    S: int,
    machine: Optional[Machine] = None,
    trace: Optional[TraceWriter] = None,
    quiescence: int = DEFAULT_QUIESCENCE,
    deadline: Optional[float] = None,
) -> AllHighRun:
    """
    Run the construction to stage S and verify its stage-wise properties:
    the partition is consecutive at every stage, it only coarsens, every
    action fixes its requirement, and each requirement quiet over the last
    `quiescence` stages satisfies f_stage(e, S) < lo_{e+1, S}.
    """
    machine = Machine() if machine is None else machine
    trace = resolve_trace(trace)
    table = FTable(S, machine, deadline, trace, lookahead=1)

    checks: List[InvariantCheck] = []
    partition_fault: Optional[str] = None
    coarsening_fault: Optional[str] = None
    action_fault: Optional[str] = None

    state = initial_partition()
    history = [state]
    f_values = table.advance(0)
    for stage in range(1, S + 1):
        check_deadline(deadline, stage, trace, "allhigh")
        f_values = table.advance(stage)
        new = allhigh_step(state, stage, f_values)
        if len(new.log) > len(state.log):
            action = new.log[-1]
            trace.act(stage, action.requirement)
            after = f_values[action.requirement]
            if action_fault is None and not (action.f_value > action.hi_before and after <= new.hi(action.requirement)):
                action_fault = f"stage {stage}: requirement {action.requirement} acted with f={after}"
            coarsening_fault = coarsening_fault or _coarsening_failure(state, new)
        else:
            trace.idle(stage)
        partition_fault = partition_fault or _partition_failure(new)
        state = new
        history.append(state)

    record_check(checks, "intervals partition omega", partition_fault)
    record_check(checks, "relation only coarsens", coarsening_fault)
    record_check(checks, "actions satisfy their requirement", action_fault)

    last_action = _last_actions(state)
    quiet_fault = None
    for e in range(S + 1):
        if e in last_action and last_action[e] > S - quiescence:
            continue
        if f_values[e] >= state.lo(e + 1):
            quiet_fault = f"requirement {e}: f_stage={f_values[e]} >= lo_{e + 1}={state.lo(e + 1)}"
            break
    record_check(checks, "quiescent requirements dominated", quiet_fault)

    unbounded = [j for j, (lo, hi) in enumerate(state.intervals) if hi < lo]
    record_check(checks, "classes finite", f"interval {unbounded[0]} is empty" if unbounded else None)

    # requirements that ask for attention at stage S + 1; the least of them acts next
    next_f = table.advance(S + 1)
    pending = tuple(e for e in range(S + 1) if next_f[e] > state.hi(e))
    logger.info("allhigh S=%d: %d action(s), %d pending", S, len(state.log), len(pending))
    return AllHighRun(
        partition=state,
        ceer=IntervalHistoryCeer(history),
        f_values=tuple(f_values),
        pending=pending,
        checks=checks,
        trace=trace.lines,
    )


def _last_actions(state: IntervalPartition) -> Dict[int, int]:
    last: Dict[int, int] = {}
    for action in state.log:
        last[action.requirement] = action.stage
    return last


def allhigh_settled_table(run: AllHighRun, rows: Optional[int] = None) -> List[Dict[str, int]]:
    """
    One row per requirement e: how often and when it last acted, the stage
    since which I_e has not changed (the last action of any requirement
    j <= e), f_stage(e, S), hi_e and lo_{e+1}. By default the rows
    run one past the largest requirement that ever acted.
    """
    state = run.partition
    counts: Dict[int, int] = defaultdict(int)
    for action in state.log:
        counts[action.requirement] += 1
    last = _last_actions(state)
    if rows is None:
        rows = (max(last) + 2) if last else 1
    rows = min(rows, len(run.f_values))
    quiet_since = list(accumulate((last.get(e, 0) for e in range(rows)), max))

    table = []
    for e in range(rows):
        table.append(
            {
                "e": e,
                "actions": counts.get(e, 0),
                "last_action": last.get(e, 0),
                "quiescent_since": quiet_since[e],
                "f": run.f_values[e],
                "hi": state.hi(e),
                "next_lo": state.lo(e + 1),
            }
        )
    return table
