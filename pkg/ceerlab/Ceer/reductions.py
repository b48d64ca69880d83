"""
Bounded reduction checks and array transport.

A reduction f : R -> S satisfies x R y <=> f(x) S f(y). Negative facts about a
ceer are only ever stage-bounded, so `check_reduction` can refute but never
prove; its verdict says so.
"""

import logging
from typing import Iterable, List, Optional, Tuple

from ceerlab.CeerLabError import NonInjectiveError, PartialFunctionError
from ceerlab.config import DEFAULT_EVAL_BUDGET
from ceerlab.models import ReductionVerdict, Side, StrongArray
from ceerlab.Machine.Machine import Machine, resolve
from .StagedCeer import StagedCeer

logger = logging.getLogger(__name__)


def evaluate_total(
    f: int,
    inputs: Iterable[int],
    budget: int = DEFAULT_EVAL_BUDGET,
    machine: Optional[Machine] = None,
) -> Tuple[int, ...]:
    """phi_f on every input, or PartialFunctionError naming all divergent ones."""
    machine = resolve(machine)
    inputs = list(inputs)
    values: List[int] = []
    divergent: List[int] = []
    for x in inputs:
        v = machine.evaluate(f, x, budget)
        if v is None:
            divergent.append(x)
        else:
            values.append(v)
    if divergent:
        raise PartialFunctionError(f, divergent, budget)
    return tuple(values)


def compose_reduction(
    f: int,
    g: int,
    inputs: Iterable[int],
    budget: int = DEFAULT_EVAL_BUDGET,
    machine: Optional[Machine] = None,
) -> Tuple[int, ...]:
    """x -> g(f(x)) on each input; chained transport through two reductions."""
    inner = evaluate_total(f, inputs, budget, machine)
    return evaluate_total(g, inner, budget, machine)


def check_reduction(
    f: int,
    R: StagedCeer,
    S: StagedCeer,
    N: int,
    s: int,
    lookahead: Optional[int] = None,
    budget: int = DEFAULT_EVAL_BUDGET,
    machine: Optional[Machine] = None,
) -> ReductionVerdict:
    """
    Two-sided bounded check of x R y <=> f(x) S f(y) on [0, N]^2 at stage s.

    forward:  x R_s y, but f(x), f(y) still unrelated in S at stage s + lookahead
    backward: f(x) S_s f(y), but x, y still unrelated in R at stage s + lookahead

    The lookahead gives the other side time to catch up with the canonical
    approximation; by default it is one more than the largest number involved.
    """
    values = evaluate_total(f, range(N + 1), budget, machine)
    if lookahead is None:
        lookahead = max((N,) + values) + 1
    later = s + lookahead
    logger.info("checking reduction by program %d on [0, %d] at stage %d (+%d)", f, N, s, lookahead)

    for x in range(N + 1):
        fx = values[x]
        for y in range(x + 1, N + 1):
            fy = values[y]
            if R.decide_at(s, x, y) and not S.decide_at(later, fx, fy):
                return ReductionVerdict(s, N, lookahead, (x, y, Side.FORWARD))
            if S.decide_at(s, fx, fy) and not R.decide_at(later, x, y):
                return ReductionVerdict(s, N, lookahead, (x, y, Side.BACKWARD))
    return ReductionVerdict(s, N, lookahead)


def image_of_array_under_reduction(
    f: int,
    A: StrongArray,
    bound: int = DEFAULT_EVAL_BUDGET,
    machine: Optional[Machine] = None,
) -> StrongArray:
    """(f[A_n])_n for f 1-1 on the support of A."""
    support = sorted(A.support)
    values = dict(zip(support, evaluate_total(f, support, bound, machine)))

    preimage = {}
    for x in support:
        v = values[x]
        if v in preimage:
            raise NonInjectiveError(
                f"program {f} is not 1-1 on the array support: "
                f"f({preimage[v]}) = f({x}) = {v}"
            )
        preimage[v] = x

    return StrongArray(tuple(frozenset(values[x] for x in members) for members in A.sets))
