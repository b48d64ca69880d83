"""
Numberings used throughout ceerlab.

- Cantor pairing <x, y> = (x + y)(x + y + 1)/2 + y and its inverse
- A bijective Goedel numbering of register-machine programs
- Length-lexicographic coding of the free semigroup {a, b}+ (a < b)
"""

from functools import lru_cache
from math import isqrt
from typing import Iterable, List, Sequence, Tuple

from ceerlab.CeerLabError import WordError
from ceerlab.models import Instruction, Opcode, Program

ALPHABET = "ab"


# =============================================================================
# Cantor Pairing
# =============================================================================


def pair(x: int, y: int) -> int:
    s = x + y
    return s * (s + 1) // 2 + y


def unpair(n: int) -> Tuple[int, int]:
    w = (isqrt(8 * n + 1) - 1) // 2
    y = n - w * (w + 1) // 2
    return w - y, y


def encode_tuple(values: Sequence[int]) -> int:
    """Nested pairs <x1, <x2, ... <x_{k-1}, x_k>>>; () -> 0, (x,) -> x."""
    if not values:
        return 0
    code = values[-1]
    for x in reversed(values[:-1]):
        code = pair(x, code)
    return code


# =============================================================================
# Program Numbering
# =============================================================================
#
# Instruction codes: 0 is HALT; c >= 1 gives (c - 1) mod 3 selecting
# INC r / JZDEC <r, t> / JMP t, with argument (c - 1) div 3.
# Programs: 0 is the empty program, n + 1 is head :: tail where
# (head, tail) = unpair(n). Both maps are bijections.


def encode_instruction(ins: Instruction) -> int:
    if ins.opcode == Opcode.HALT:
        return 0
    if ins.opcode == Opcode.INC:
        return 3 * ins.register + 1
    if ins.opcode == Opcode.JZDEC:
        return 3 * pair(ins.register, ins.target) + 2
    return 3 * ins.target + 3


def decode_instruction(c: int) -> Instruction:
    if c == 0:
        return Instruction(Opcode.HALT)
    kind, arg = (c - 1) % 3, (c - 1) // 3
    if kind == 0:
        return Instruction(Opcode.INC, register=arg)
    if kind == 1:
        r, t = unpair(arg)
        return Instruction(Opcode.JZDEC, register=r, target=t)
    return Instruction(Opcode.JMP, target=arg)


def encode_program(code: Iterable[Instruction]) -> int:
    e = 0
    for ins in reversed(list(code)):
        e = pair(encode_instruction(ins), e) + 1
    return e


@lru_cache(maxsize=65536)
def decode_program(e: int) -> Program:
    """Total and deterministic; encode_program(decode_program(e).code) == e."""
    code: List[Instruction] = []
    n = e
    while n > 0:
        head, n = unpair(n - 1)
        code.append(decode_instruction(head))
    return Program(code=tuple(code), index=e)


def pad(e: int, k: int = 1) -> int:
    """Index of program e with k dead HALTs appended; same partial function."""
    program = decode_program(e)
    return encode_program(program.code + (Instruction(Opcode.HALT),) * k)


# =============================================================================
# Word Coding
# =============================================================================


def validate_word(w: str) -> str:
    if not w:
        raise WordError("the empty word is not in {a,b}+")
    bad = set(w) - set(ALPHABET)
    if bad:
        raise WordError(f"word {w!r} has symbols outside {{a,b}}: {''.join(sorted(bad))}")
    return w


def word_code(w: str) -> int:
    """Length-lex rank: a->0, b->1, aa->2, ab->3, ba->4, bb->5, aaa->6, ..."""
    validate_word(w)
    n = len(w)
    offset = (1 << n) - 2  # number of words shorter than n
    rank = int(w.replace("a", "0").replace("b", "1"), 2)
    return offset + rank


def word_decode(n: int) -> str:
    if n < 0:
        raise WordError(f"word codes are naturals, got {n}")
    length = (n + 2).bit_length() - 1
    rank = n - ((1 << length) - 2)
    bits = format(rank, "b").zfill(length)
    return bits.replace("0", "a").replace("1", "b")


def length_lex_key(w: str) -> Tuple[int, str]:
    return (len(w), w)
