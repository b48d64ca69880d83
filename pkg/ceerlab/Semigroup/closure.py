"""
Breadth-first congruence closure: an independent oracle for the S(R) and
finite-class presentations.

Relation instances at stage s: a b^i a = a b^j a whenever i - 1 and j - 1 are
below s and R_s-related. The S(R) presentation further identifies all words
of C+ with each other, applied here among words within the length bound.
"""

import logging
import warnings
from collections import deque
from itertools import product
from typing import Dict, List, Optional

from ceerlab.CeerLabWarning import TruncationWarning
from ceerlab.config import DEFAULT_CAP
from ceerlab.Ceer.StagedCeer import StagedCeer
from ceerlab.Machine.encoding import validate_word
from ceerlab.models import ClosureResult, Presentation, PresentationKind, StratumKind
from .strata import classify, coding_occurrences

logger = logging.getLogger(__name__)


def related_exponents(R: StagedCeer, s: int, i: int) -> List[int]:
    """Exponents j >= 1 with a b^i a = a b^j a at stage s (i itself included)."""
    if i - 1 >= s:
        return [i]
    return [j for j in range(1, s + 1) if R.decide_at(s, i - 1, j - 1)]


def contains_coding_words(max_length: int) -> List[str]:
    words = []
    for n in range(1, max_length + 1):
        for letters in product("ab", repeat=n):
            w = "".join(letters)
            if classify(w).kind == StratumKind.CONTAINS_CODING:
                words.append(w)
    return words


def congruence_closure(
    P: Presentation,
    s: int,
    w: str,
    cap: int = DEFAULT_CAP,
    max_length: Optional[int] = None,
) -> ClosureResult:
    """
    Words reachable from w by single-occurrence rewrites, explored breadth
    first. At most `cap` words are visited. Rewrites producing words longer
    than `max_length` are skipped; for S(R) the bound defaults to len(w).
    """
    validate_word(w)
    if max_length is None and P.kind == PresentationKind.SR:
        max_length = len(w)

    exponents: Dict[int, List[int]] = {}
    plus_words: Optional[List[str]] = None
    visited = {w}
    queue = deque([w])
    truncated = False
    length_bounded = False

    def visit(word: str) -> bool:
        nonlocal truncated
        if word in visited:
            return True
        if len(visited) >= cap:
            truncated = True
            return False
        visited.add(word)
        queue.append(word)
        return True

    while queue and not truncated:
        u = queue.popleft()

        if P.kind == PresentationKind.SR and classify(u).kind == StratumKind.CONTAINS_CODING:
            if plus_words is None:
                plus_words = contains_coding_words(max_length)
            # longer C+ words always exist past the bound
            length_bounded = True
            for v in plus_words:
                if not visit(v):
                    break

        for start, i in coding_occurrences(u):
            if i not in exponents:
                exponents[i] = related_exponents(P.ceer, s, i)
            for j in exponents[i]:
                if j == i:
                    continue
                if max_length is not None and len(u) - i + j > max_length:
                    length_bounded = True
                    continue
                v = u[: start + 1] + "b" * j + u[start + 1 + i:]
                if not visit(v):
                    break

    logger.debug("closure of %r: %d words (truncated=%s)", w, len(visited), truncated)
    if truncated:
        warnings.warn(
            f"closure of {w!r} hit the cap of {cap} words; the result is a lower approximation",
            TruncationWarning,
            stacklevel=2,
        )
    return ClosureResult(words=frozenset(visited), truncated=truncated, length_bounded=length_bounded)
