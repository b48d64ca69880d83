from typing import Callable, List, Optional, Tuple

from .StagedCeer import StagedCeer


def classes_at(R: StagedCeer, s: int, N: int) -> List[List[int]]:
    """
    Partition of {0, ..., N} induced by R_s.

    Blocks are listed by least element ascending, members ascending.
    """
    leaders: List[int] = []
    blocks: List[List[int]] = []
    for x in range(N + 1):
        for leader, block in zip(leaders, blocks):
            if R.decide_at(s, leader, x):
                block.append(x)
                break
        else:
            leaders.append(x)
            blocks.append([x])
    return blocks


def format_classes(blocks: List[List[int]]) -> List[str]:
    """`least: members...` lines, one per block."""
    return [f"{block[0]}: {' '.join(map(str, block))}" for block in blocks]


def is_equivalence_at(R: StagedCeer, s: int, N: int) -> Optional[Tuple[str, Tuple[int, ...]]]:
    """
    Exhaustive equivalence check of R_s on [0, N]^2.

    Returns None when R_s is reflexive, symmetric and transitive there,
    otherwise the failed axiom and a witness tuple.
    """
    size = N + 1
    rows = []
    for x in range(size):
        bits = 0
        for y in range(size):
            if R.decide_at(s, x, y):
                bits |= 1 << y
        rows.append(bits)

    for x in range(size):
        if not rows[x] >> x & 1:
            return "reflexive", (x,)
    for x in range(size):
        for y in range(size):
            if not rows[x] >> y & 1 or rows[x] == rows[y]:
                continue
            if not rows[y] >> x & 1:
                return "symmetric", (x, y)
            extra = rows[y] & ~rows[x]
            if extra:
                return "transitive", (x, y, extra.bit_length() - 1)
            missing = rows[x] & ~rows[y]
            return "transitive", (y, x, missing.bit_length() - 1)
    return None


def is_monotone_on(R: StagedCeer, s: int, N: int) -> Optional[Tuple[int, int]]:
    """A pair related at stage s but not at s + 1, if any."""
    for x in range(N + 1):
        for y in range(x + 1, N + 1):
            if R.decide_at(s, x, y) and not R.decide_at(s + 1, x, y):
                return x, y
    return None


def limit_equal_on(
    R: StagedCeer,
    S,
    s: int,
    N: int,
) -> Optional[Tuple[int, int]]:
    """
    Compare R_s with S on [0, N]^2. S may be another StagedCeer (compared at
    the same stage) or a plain predicate (x, y) -> bool.

    Returns the first disagreeing pair, or None.
    """
    if isinstance(S, StagedCeer):
        other: Callable[[int, int], bool] = lambda x, y: S.decide_at(s, x, y)
    else:
        other = S
    for x in range(N + 1):
        for y in range(x, N + 1):
            if R.decide_at(s, x, y) != other(x, y):
                return x, y
    return None
