"""
Word problems of S(R), its finite-class variant and the subword-closure
quotient, plus the explicit isomorphism between S(R) and R + Id_omega.

sr_decide follows the stratum normal form: coding words a b^i a and a b^j a
are equal iff (i - 1) R (j - 1), all of C+ is one class and every avoiding
word is a class of its own.
"""

import math
from typing import Iterable

from ceerlab.CeerLabError import CeerLabError
from ceerlab.config import DEFAULT_CAP
from ceerlab.Machine.encoding import validate_word
from ceerlab.models import ClassSize, Decision, Presentation, PresentationKind, StratumKind
from ceerlab.Constructions.postsimple import subword_closure_member
from .closure import congruence_closure, related_exponents
from .strata import avoiding_rank, avoiding_unrank, classify, coding_occurrences, coding_word

CONTAINS_CODING_WITNESS = "aaba"


def _expect(P: Presentation, kind: PresentationKind) -> None:
    if P.kind != kind:
        raise CeerLabError(f"expected a {kind.value} presentation, got {P.kind.value}")


def sr_decide(P: Presentation, s: int, u: str, v: str) -> bool:
    _expect(P, PresentationKind.SR)
    validate_word(u)
    validate_word(v)
    if u == v:
        return True
    su, sv = classify(u), classify(v)
    if su.kind != sv.kind:
        return False
    if su.kind == StratumKind.CODING:
        return P.ceer.decide_at(s, su.exponent - 1, sv.exponent - 1)
    return su.kind == StratumKind.CONTAINS_CODING


def sr_to_join(w: str) -> int:
    """Coding a b^i a -> 2(i - 1); C+ -> 1; the k-th avoiding word -> 2k + 3."""
    stratum = classify(w)
    if stratum.kind == StratumKind.CODING:
        return 2 * (stratum.exponent - 1)
    if stratum.kind == StratumKind.CONTAINS_CODING:
        return 1
    return 2 * avoiding_rank(w) + 3


def sr_from_join(n: int) -> str:
    if n < 0:
        raise CeerLabError(f"join codes are naturals, got {n}")
    if n % 2 == 0:
        return coding_word(n // 2 + 1)
    if n == 1:
        return CONTAINS_CODING_WITNESS
    return avoiding_unrank((n - 3) // 2)


def fincl_decide(P: Presentation, s: int, u: str, v: str, cap: int = DEFAULT_CAP) -> Decision:
    _expect(P, PresentationKind.FINCL)
    validate_word(v)
    closure = congruence_closure(P, s, u, cap)
    if v in closure:
        return Decision.EQUAL
    if closure.complete:
        return Decision.DISTINCT
    return Decision.UNKNOWN


def fincl_class_size(P: Presentation, s: int, w: str, cap: int = DEFAULT_CAP) -> ClassSize:
    """
    Size of the class of w by closure, and the product of the R_s class sizes
    over its coding factors when no two of them share an `a`.
    """
    _expect(P, PresentationKind.FINCL)
    closure = congruence_closure(P, s, w, cap)
    occurrences = coding_occurrences(w)

    predicted = None
    overlapping = any(
        later[0] == earlier[0] + earlier[1] + 1 for earlier, later in zip(occurrences, occurrences[1:])
    )
    if not overlapping:
        predicted = math.prod(len(related_exponents(P.ceer, s, i)) for _, i in occurrences)
    return ClassSize(size=len(closure), truncated=closure.truncated, predicted=predicted)


def sz_decide(Z: Iterable[str], u: str, v: str) -> bool:
    """Equality in the quotient of {a, b}+ that collapses the subword closure of Z."""
    Z = list(Z)
    validate_word(v)
    if u == v:
        validate_word(u)
        return True
    return subword_closure_member(Z, u) and subword_closure_member(Z, v)
