"""
Machine - the unlimited register machine behind phi_e and W_e.

Input is placed in register 0 and the output is read from register 0 at halt.
One instruction dispatch (HALT included) is one step; falling off the end of
the program halts without spending a step.

A `Machine` memoizes one resumable execution per (program, input) pair, so a
construction that asks for phi_{e,s}(i) at increasing stages pays for every
machine step only once. At most `max_runs` executions are kept, least
recently used first out; `Machine.clear()` drops them all. Exact repetition
of a machine state (or of the program counter, for programs without JZDEC)
is detected and marks the run divergent; answers are identical to plain
bounded execution.
"""

import logging
import threading
from collections import OrderedDict
from typing import Dict, FrozenSet, Optional, Tuple

from ceerlab.CeerLabError import CeerLabError
from ceerlab.config import DEFAULT_EVAL_BUDGET, DEFAULT_MAX_RUNS
from ceerlab.models import Opcode, OutcomeStatus, Program, StageOutcome
from .encoding import decode_program

logger = logging.getLogger(__name__)


class _Run:
    """Resumable execution of one program on one input."""

    __slots__ = (
        "program",
        "pc",
        "regs",
        "steps",
        "halted",
        "diverged",
        "value",
        "saved_pc",
        "saved_regs",
        "checkpoint",
    )

    def __init__(self, program: Program, i: int):
        self.program = program
        self.pc = 0
        self.regs: Optional[Dict[int, int]] = {0: i} if i else {}
        self.steps = 0
        self.halted = False
        self.diverged = False
        self.value: Optional[int] = None
        self.saved_pc = -1
        self.saved_regs: Optional[Dict[int, int]] = None
        self.checkpoint = 1

    def advance(self, budget: int) -> None:
        """Run until halted, divergent, or `budget` steps have been spent."""
        code = self.program.code
        size = len(code)
        conditional = self.program.has_conditional
        regs = self.regs
        pc = self.pc
        steps = self.steps

        while True:
            if pc >= size:
                self._halt(regs, steps)
                return
            if steps >= budget:
                break
            ins = code[pc]
            steps += 1
            op = ins.opcode
            if op == Opcode.HALT:
                self._halt(regs, steps)
                return
            if op == Opcode.INC:
                regs[ins.register] = regs.get(ins.register, 0) + 1
                pc += 1
            elif op == Opcode.JZDEC:
                v = regs.get(ins.register, 0)
                if v == 0:
                    pc = ins.target
                else:
                    if v == 1:
                        del regs[ins.register]
                    else:
                        regs[ins.register] = v - 1
                    pc += 1
            else:
                pc = ins.target

            # Brent-style cycle check against the last power-of-two checkpoint
            if pc == self.saved_pc and (not conditional or regs == self.saved_regs):
                self.diverged = True
                self.regs = None
                self.steps = steps
                logger.debug("state repeated after %d steps; run marked divergent", steps)
                return
            if steps == self.checkpoint:
                self.saved_pc = pc
                self.saved_regs = dict(regs) if conditional else None
                self.checkpoint *= 2

        self.pc = pc
        self.steps = steps

    def _halt(self, regs: Dict[int, int], steps: int) -> None:
        self.halted = True
        self.value = regs.get(0, 0)
        self.steps = steps
        self.regs = None
        self.saved_regs = None


class Machine:
    """
    Memoizing simulator for the fixed program numbering.

    All queries are pure functions of their arguments; the cache only
    remembers how far each execution has already been carried. An evicted
    execution is restarted from step 0 when it is asked for again.
    """

    def __init__(self, max_runs: int = DEFAULT_MAX_RUNS):
        if max_runs < 1:
            raise CeerLabError(f"max_runs must be at least 1, got {max_runs}")
        self.max_runs = max_runs
        self._runs: "OrderedDict[Tuple[int, int], _Run]" = OrderedDict()
        self._lock = threading.RLock()

    @property
    def cached_runs(self) -> int:
        return len(self._runs)

    def clear(self) -> None:
        with self._lock:
            self._runs.clear()

    def outcome(self, e: int, i: int, steps: int) -> StageOutcome:
        """Status of program e on input i after at most `steps` steps."""
        with self._lock:
            run = self._runs.get((e, i))
            if run is None:
                run = _Run(decode_program(e), i)
                self._runs[(e, i)] = run
                if len(self._runs) > self.max_runs:
                    self._runs.popitem(last=False)
            else:
                self._runs.move_to_end((e, i))
            if not (run.halted or run.diverged) and run.steps <= steps:
                run.advance(steps)
            if run.halted and run.steps <= steps:
                return StageOutcome(OutcomeStatus.HALTED, run.value, run.steps)
            return StageOutcome(OutcomeStatus.RUNNING, None, steps)

    def phi_stage(self, e: int, i: int, s: int) -> Optional[int]:
        """phi_{e,s}(i): halted within s steps with an output below s."""
        if s <= 0:
            return None
        result = self.outcome(e, i, s)
        if result.halted and result.value < s:
            return result.value
        return None

    def we_stage(self, e: int, s: int) -> FrozenSet[int]:
        """W_{e,s} = { i < s : phi_{e,s}(i) defined }."""
        return frozenset(i for i in range(s) if self.phi_stage(e, i, s) is not None)

    def convergence(self, e: int, i: int, budget: int) -> Optional[Tuple[int, int]]:
        """
        (first stage s with phi_{e,s}(i) defined, value), provided that
        stage is at most `budget`; None otherwise.
        """
        result = self.outcome(e, i, budget)
        if not result.halted:
            return None
        first = max(result.steps, result.value + 1, 1)
        if first > budget:
            return None
        return first, result.value

    def evaluate(self, e: int, i: int, budget: int = DEFAULT_EVAL_BUDGET) -> Optional[int]:
        """phi_e(i) when it shows up by stage `budget`, else None."""
        return self.phi_stage(e, i, budget)


DEFAULT_MACHINE = Machine()


def resolve(machine: Optional[Machine]) -> Machine:
    return DEFAULT_MACHINE if machine is None else machine


def phi_stage(e: int, i: int, s: int, machine: Optional[Machine] = None) -> Optional[int]:
    return resolve(machine).phi_stage(e, i, s)


def we_stage(e: int, s: int, machine: Optional[Machine] = None) -> FrozenSet[int]:
    return resolve(machine).we_stage(e, s)
