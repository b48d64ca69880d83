"""
Post-style simple set of words and its subword closure.

Z is enumerated over X+ = {a, b}+ (words identified with their length-lex
codes): at stage s + 1, each index i not yet served whose W_{i,s+1} first
contains a word of length >= i + 5 puts the least such word into Z. Only
indices i < k can contribute words of length <= k + 4, so Z has at most k
of them. The subword closure of Z is the set of words having a member of Z
as a factor; the census counts words avoiding it.
"""

import logging
from collections import deque
from typing import Dict, Iterable, List, Optional

from ceerlab.CeerLabError import CeerLabError
from ceerlab.Machine.Machine import Machine, resolve
from ceerlab.Machine.encoding import ALPHABET, validate_word, word_decode
from ceerlab.models import InvariantCheck, PostSimpleRun, SimpleSetState
from .helpers import check_deadline, record_check
from .trace import TraceWriter, resolve_trace

logger = logging.getLogger(__name__)

MIN_EXTRA_LENGTH = 5  # index i only serves words of length >= i + 5


def first_code_of_length(n: int) -> int:
    """Length-lex code of a^n."""
    return (1 << n) - 2


def postsimple_step(state: SimpleSetState, stage: int, machine: Optional[Machine] = None) -> SimpleSetState:
    """Move `state` (stage - 1) to `stage`, serving indices in increasing order."""
    if state.stage != stage - 1:
        raise CeerLabError(f"state is at stage {state.stage}, cannot step to {stage}")
    machine = resolve(machine)
    used = state.used_indices
    members = set(state.members)
    served = list(state.served)

    i = 0
    while True:
        lo = first_code_of_length(i + MIN_EXTRA_LENGTH)
        if lo >= stage:
            # W_{i,stage} lies below the stage, so no longer index can fire
            break
        if i not in used:
            for x in range(lo, stage):
                if machine.phi_stage(i, x, stage) is not None:
                    word = word_decode(x)
                    members.add(word)
                    served.append((i, word))
                    break
        i += 1

    return SimpleSetState(members=frozenset(members), served=tuple(served), stage=stage)


def subword_closure_member(Z: Iterable[str], w: str) -> bool:
    """Some z in Z occurs in w as a contiguous factor."""
    validate_word(w)
    return any(z in w for z in Z)


# ------------------------------------------------------------------ #
# Avoidance census: forbidden-factor automaton
# ------------------------------------------------------------------ #
def _automaton(Z: Iterable[str]):
    """Aho-Corasick goto table over {a, b}; `dead` marks states that end a factor."""
    goto: List[Dict[str, int]] = [{}]
    dead: List[bool] = [False]
    for z in Z:
        validate_word(z)
        state = 0
        for ch in z:
            nxt = goto[state].get(ch)
            if nxt is None:
                goto.append({})
                dead.append(False)
                nxt = len(goto) - 1
                goto[state][ch] = nxt
            state = nxt
        dead[state] = True

    fail = [0] * len(goto)
    table: List[Dict[str, int]] = [dict() for _ in goto]
    queue = deque()
    for ch in ALPHABET:
        child = goto[0].get(ch)
        if child is None:
            table[0][ch] = 0
        else:
            table[0][ch] = child
            queue.append(child)
    while queue:
        state = queue.popleft()
        dead[state] = dead[state] or dead[fail[state]]
        for ch in ALPHABET:
            child = goto[state].get(ch)
            if child is None:
                table[state][ch] = table[fail[state]][ch]
            else:
                fail[child] = table[fail[state]][ch]
                table[state][ch] = child
                queue.append(child)
    return table, dead


def avoidance_census(Z: Iterable[str], L: int) -> Dict[int, int]:
    """Number of words of each length 1..L having no member of Z as a factor."""
    table, dead = _automaton(Z)
    counts: Dict[int, int] = {}
    current = {0: 1}
    for length in range(1, L + 1):
        following: Dict[int, int] = {}
        for state, ways in current.items():
            for ch in ALPHABET:
                nxt = table[state][ch]
                if not dead[nxt]:
                    following[nxt] = following.get(nxt, 0) + ways
        current = following
        counts[length] = sum(current.values())
    return counts


def _bound_failure(state: SimpleSetState, k_max: int) -> Optional[str]:
    lengths = sorted(len(w) for w in state.members)
    for k in range(k_max + 1):
        short = sum(1 for n in lengths if n <= k + 4)
        if short > k:
            return f"stage {state.stage}: {short} member(s) of length <= {k + 4}"
    return None


def postsimple_run(
    S: int,
    census_length: int = 0,
    machine: Optional[Machine] = None,
    trace: Optional[TraceWriter] = None,
    k_max: int = 25,
    deadline: Optional[float] = None,
) -> PostSimpleRun:
    """
    Enumerate Z for S stages. Checks at every stage: at most k members of
    length <= k + 4 for k <= k_max, and one member per served index.
    With census_length > 0 the avoidance counts of the final Z are attached.
    """
    machine = resolve(machine)
    trace = resolve_trace(trace)
    state = SimpleSetState()
    bound_fault: Optional[str] = None

    for stage in range(1, S + 1):
        check_deadline(deadline, stage, trace, "postsimple")
        before = len(state.served)
        state = postsimple_step(state, stage, machine)
        fresh = state.served[before:]
        for i, word in fresh:
            trace.serve(stage, i, word)
        if not fresh:
            trace.idle(stage)
        if fresh and bound_fault is None:
            bound_fault = _bound_failure(state, k_max)

    checks: List[InvariantCheck] = []
    record_check(checks, "short members bounded", bound_fault)
    short = sorted(w for w in state.members if len(w) < MIN_EXTRA_LENGTH)
    record_check(checks, "no member shorter than 5", f"member {short[0]}" if short else None)
    indices = [i for i, _ in state.served]
    record_check(
        checks,
        "one member per index",
        None if len(indices) == len(set(indices)) == len(state.members) else "an index served twice",
    )

    census: Dict[int, int] = {}
    if census_length > 0:
        census = avoidance_census(state.members, census_length)
        empty = [n for n, count in census.items() if count == 0]
        record_check(checks, "avoiding words at every length", f"none of length {empty[0]}" if empty else None)

    logger.info("postsimple S=%d: %d member(s)", S, len(state.members))
    return PostSimpleRun(state=state, census=census, checks=checks, trace=trace.lines)
