"""
Principal transversals at a fixed stage.

The least elements of the R_s classes meeting [0, N] over-approximate the
true principal transversal T_R: as classes merge later, elements can only
leave. Everything here is certified at its stage and claims nothing more.
"""

import random
from typing import Iterable, List, Optional

from ceerlab.CeerLabError import HorizonError
from ceerlab.Ceer.StagedCeer import StagedCeer
from ceerlab.Ceer.builder import cylindrify
from ceerlab.Ceer.helpers import classes_at
from ceerlab.Machine.encoding import pair
from ceerlab.models import TransversalSample


def principal_at(R: StagedCeer, s: int, N: int) -> TransversalSample:
    leaders = tuple(block[0] for block in classes_at(R, s, N))
    return TransversalSample(elements=leaders, stage=s)


def principal_function_at(R: StagedCeer, s: int, k: int, N: int) -> int:
    """p(k), 0-indexed, for the stage-s principal transversal below N."""
    elements = principal_at(R, s, N).elements
    if k >= len(elements):
        raise HorizonError(
            f"insufficient horizon: only {len(elements)} class representative(s) "
            f"in [0, {N}] at stage {s}, asked for index {k}"
        )
    return elements[k]


def is_transversal_at(R: StagedCeer, s: int, T: Iterable[int]) -> bool:
    members = sorted(set(T))
    for i, x in enumerate(members):
        for y in members[i + 1:]:
            if R.decide_at(s, x, y):
                return False
    return True


def random_certified_sample(
    R: StagedCeer,
    s: int,
    N: int,
    rng: Optional[random.Random] = None,
    size: Optional[int] = None,
) -> TransversalSample:
    """
    A random set of pairwise R_s-unrelated numbers in [0, N].

    Candidates are visited in shuffled order and kept when unrelated to all
    kept so far; `size` stops the draw early.
    """
    rng = rng or random.Random(0)
    candidates = list(range(N + 1))
    rng.shuffle(candidates)
    chosen: List[int] = []
    for x in candidates:
        if size is not None and len(chosen) >= size:
            break
        if all(not R.decide_at(s, x, y) for y in chosen):
            chosen.append(x)
    return TransversalSample(elements=tuple(sorted(chosen)), stage=s)


def cylinder_principal_law(R: StagedCeer, s: int, k: int, N: int) -> bool:
    """
    Whether the principal transversal of the cylindrification starts with
    <p(0), 0>, ..., <p(k), 0> at stage s, p being R's principal function.

    Codes below <0, s> all have a second coordinate under s, so the law is
    checkable at stage s only up to that code.
    """
    base = [principal_function_at(R, s, i, N) for i in range(k + 1)]
    expected = [pair(p, 0) for p in base]
    if expected[-1] >= pair(0, s):
        raise HorizonError(
            f"stage {s} too small to compare cylinder codes up to {expected[-1]}"
        )
    found = principal_at(cylindrify(R), s, expected[-1]).elements
    return list(found[: k + 1]) == expected
