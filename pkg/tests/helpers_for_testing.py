# =============================================================================
# Shared helpers: hand-assembled programs and a corpus of ceer specs
# =============================================================================

from ceerlab.Ceer.builder import build
from ceerlab.Machine.encoding import encode_program
from ceerlab.Machine.parsers.asm_parser import assemble, parse_asm
from ceerlab.models import (
    AlgebraOperation,
    AlgebraPresentation,
    Cylindrify,
    FromPairs,
    IdN,
    IdOmega,
    Intervals,
    Mod,
    Restrict,
    UniCe,
    UniformJoin,
    UniSet,
)

# Program 0 is the empty program: it halts at once, so it computes the
# identity with no steps at all.
EMPTY_PROGRAM = 0

# [INC 0]: successor, one step.
SUCCESSOR = 2

# Register 0 is moved into register 1 and back: the identity, with steps.
COPY_IDENTITY_ASM = """\
0: JZDEC 0 3
1: INC 1
2: JMP 0
3: JZDEC 1 6
4: INC 0
5: JMP 3
6: HALT
"""

# Register 0 is moved into register 1 twice over, then back: x -> 2x.
DOUBLING_ASM = """\
0: JZDEC 0 4
1: INC 1
2: INC 1
3: JMP 0
4: JZDEC 1 7
5: INC 0
6: JMP 4
7: HALT
"""

# Loops forever on every input.
LOOP_ASM = "JMP 0\n"

# Halts on 0 only: JZDEC jumps to the end when register 0 is zero.
ZERO_ONLY_ASM = """\
0: JZDEC 0 2
1: JMP 1
"""


def program_index(text: str) -> int:
    return encode_program(parse_asm(text))


def copy_identity_index() -> int:
    return program_index(COPY_IDENTITY_ASM)


def doubling_index() -> int:
    return assemble(DOUBLING_ASM).index


def loop_index() -> int:
    return program_index(LOOP_ASM)


def zero_only_index() -> int:
    return program_index(ZERO_ONLY_ASM)


def pair_intervals(blocks: int = 200) -> Intervals:
    """Classes {0,1}, {2,3}, ... for the first `blocks` pairs."""
    return Intervals((2,) * blocks)


def corpus_specs():
    """Specs covering every leaf and combinator."""
    return [
        IdOmega(),
        IdN(1),
        IdN(4),
        Mod(2),
        Mod(3),
        Intervals((2, 2)),
        Intervals((1, 3, 2)),
        UniSet(frozenset({0, 1, 5})),
        UniCe(EMPTY_PROGRAM),
        UniCe(zero_only_index()),
        FromPairs(EMPTY_PROGRAM),
        Cylindrify(Mod(2)),
        UniformJoin(Mod(2), Mod(3)),
        UniformJoin(IdN(1), IdOmega()),
        Restrict(Mod(3), doubling_index()),
        Restrict(Intervals((2, 2)), EMPTY_PROGRAM),
    ]


def corpus_ceers():
    return [build(spec) for spec in corpus_specs()]


def decidable_specs():
    return [IdOmega(), IdN(1), IdN(3), Mod(3), Mod(4), Intervals((2, 2)), Intervals((3,)), pair_intervals(60)]


def successor_algebra(wp_spec=IdOmega(), generators=(0,)) -> AlgebraPresentation:
    return AlgebraPresentation(
        ops=(AlgebraOperation(arity=1, program=SUCCESSOR),),
        wp=build(wp_spec),
        generators=frozenset(generators),
    )
