"""
Majorization and array checks: finite evidence about immunity notions.

A transversal T is hyperimmune iff no computable function majorizes its
principal function, and iff no strong disjoint array meets it everywhere.
Each check here tests one finite instance of these criteria.
"""

import logging
import warnings
from typing import Iterable, Optional, Sequence

from ceerlab.CeerLabWarning import PropertyViolationWarning
from ceerlab.Ceer.StagedCeer import StagedCeer
from ceerlab.Ceer.reductions import evaluate_total
from ceerlab.config import DEFAULT_EVAL_BUDGET
from ceerlab.Machine.Machine import Machine
from ceerlab.models import StrongArray, TransversalSample
from .principal import principal_at, principal_function_at

logger = logging.getLogger(__name__)


def majorization_check(R: StagedCeer, s: int, T: TransversalSample, N: int) -> bool:
    """
    p_T(i) >= p(i) for every i < |T|, p the stage-s principal function.

    Any certified transversal majorizes the principal one, so a False here
    is an implementation fault and is reported as a PropertyViolationWarning.
    """
    principal = principal_at(R, s, N).elements
    for i, t in enumerate(T.elements):
        if i >= len(principal):
            principal_function_at(R, s, i, N)  # raises HorizonError
        p = principal[i]
        if t < p:
            warnings.warn(
                f"transversal element p_T({i}) = {t} is below the principal "
                f"value {p} at stage {s}",
                PropertyViolationWarning,
                stacklevel=2,
            )
            return False
    return True


def majorizer_check(
    g: int,
    R: StagedCeer,
    s: int,
    k_max: int,
    N: int,
    budget: int = DEFAULT_EVAL_BUDGET,
    machine: Optional[Machine] = None,
) -> bool:
    """phi_g(i) >= p(i) for all i <= k_max; raises PartialFunctionError on divergence."""
    values = evaluate_total(g, range(k_max + 1), budget, machine)
    principal = principal_at(R, s, N).elements
    for i, v in enumerate(values):
        if i >= len(principal):
            principal_function_at(R, s, i, N)  # raises HorizonError
        if v < principal[i]:
            logger.info("program %d fails to majorize at %d: %d < %d", g, i, v, principal[i])
            return False
    return True


def majorizes(values: Sequence[int], T: TransversalSample) -> bool:
    """values[i] >= p_T(i) wherever both are defined."""
    return all(v >= t for v, t in zip(values, T.elements))


def array_intersection_check(A: StrongArray, T: Iterable[int]) -> bool:
    members = set(T)
    return all(not members.isdisjoint(block) for block in A.sets)


def domination_check(T: Sequence[int], f_values: Sequence[int]) -> Optional[int]:
    """
    First e with p_T(e + 1) <= f(e), or None when p_T(e + 1) dominates f
    on every e that both sequences cover.
    """
    for e, f in enumerate(f_values):
        if e + 1 >= len(T):
            break
        if T[e + 1] <= f:
            return e
    return None
