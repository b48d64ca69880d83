"""
Strata of the free semigroup {a, b}+.

- coding words a b^i a with i >= 1 (C)
- words properly containing a coding word (C+)
- words containing none (C-); exactly the words b^p a^q b^r

There are n(n + 1)/2 + 1 words of length n in C-.
"""

import re
from typing import Iterator, List, Tuple

from ceerlab.CeerLabError import WordError
from ceerlab.Machine.encoding import validate_word
from ceerlab.models import Stratum, StratumKind

CODING_PATTERN = re.compile(r"ab+a")


def classify(w: str) -> Stratum:
    validate_word(w)
    if CODING_PATTERN.fullmatch(w):
        return Stratum(StratumKind.CODING, exponent=len(w) - 2)
    if CODING_PATTERN.search(w):
        return Stratum(StratumKind.CONTAINS_CODING)
    return Stratum(StratumKind.AVOIDING)


def coding_word(i: int) -> str:
    if i < 1:
        raise WordError(f"coding words need i >= 1, got {i}")
    return "a" + "b" * i + "a"


def coding_occurrences(w: str) -> List[Tuple[int, int]]:
    """(start, i) for every factor a b^i a of w, left to right."""
    found = []
    for p, ch in enumerate(w):
        if ch != "a":
            continue
        q = p + 1
        while q < len(w) and w[q] == "b":
            q += 1
        if q > p + 1 and q < len(w):
            found.append((p, q - p - 1))
    return found


# ------------------------------------------------------------------ #
# The avoiding stratum in length-lex order
# ------------------------------------------------------------------ #
def avoiding_count(n: int) -> int:
    return n * (n + 1) // 2 + 1 if n >= 1 else 0


def _shorter_count(n: int) -> int:
    """Avoiding words of lengths 1 .. n - 1."""
    return (n - 1) * n * (n + 1) // 6 + (n - 1) if n >= 1 else 0


def avoiding_words(n: int) -> List[str]:
    """All words b^p a^q b^r of length n, lexicographically sorted."""
    if n < 1:
        return []
    words = {"b" * n}
    for q in range(1, n + 1):
        for p in range(n - q + 1):
            words.add("b" * p + "a" * q + "b" * (n - q - p))
    return sorted(words)


def iter_avoiding() -> Iterator[str]:
    n = 1
    while True:
        yield from avoiding_words(n)
        n += 1


def avoiding_rank(w: str) -> int:
    """Position of w among the avoiding words in length-lex order."""
    if classify(w).kind != StratumKind.AVOIDING:
        raise WordError(f"{w!r} contains a coding word")
    return _shorter_count(len(w)) + avoiding_words(len(w)).index(w)


def avoiding_unrank(k: int) -> str:
    if k < 0:
        raise WordError(f"avoiding ranks are naturals, got {k}")
    n = 1
    while k >= avoiding_count(n):
        k -= avoiding_count(n)
        n += 1
    return avoiding_words(n)[k]
