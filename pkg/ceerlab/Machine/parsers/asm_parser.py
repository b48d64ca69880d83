import re
from typing import List, Tuple

from ceerlab.CeerLabError import SpecParseError
from ceerlab.models import Instruction, Opcode, Program
from ceerlab.Machine.encoding import decode_program, encode_program

_NATURAL = re.compile(r"[0-9]+")

# mnemonic -> (opcode, number of operands)
_MNEMONICS = {
    "HALT": (Opcode.HALT, 0),
    "INC": (Opcode.INC, 1),
    "JZDEC": (Opcode.JZDEC, 2),
    "JMP": (Opcode.JMP, 1),
}


def _parse_operand(token: str, line: int, column: int) -> int:
    if not _NATURAL.fullmatch(token):
        raise SpecParseError(f"expected a natural number, got {token!r}", line, column)
    return int(token)


def _tokens(text: str) -> List[Tuple[str, int]]:
    """Whitespace-separated tokens with their 1-based columns."""
    out = []
    i = 0
    while i < len(text):
        if text[i].isspace():
            i += 1
            continue
        start = i
        while i < len(text) and not text[i].isspace():
            i += 1
        out.append((text[start:i], start + 1))
    return out


# ------------------------------------------------------------------ #
# Assembly text -> instructions
# ------------------------------------------------------------------ #
def parse_asm(text: str) -> Tuple[Instruction, ...]:
    """
    Parse one instruction per line: `INC r`, `JZDEC r t`, `JMP t`, `HALT`.

    Blank lines and `#` comments are skipped, and an optional `n:` label in
    front of an instruction is accepted (and ignored). Mnemonics are case
    insensitive.
    """
    code: List[Instruction] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        tokens = _tokens(body)
        if not tokens:
            continue
        if tokens[0][0].endswith(":") and _NATURAL.fullmatch(tokens[0][0][:-1]):
            tokens = tokens[1:]
            if not tokens:
                continue

        word, column = tokens[0]
        entry = _MNEMONICS.get(word.upper())
        if entry is None:
            raise SpecParseError(f"unknown instruction {word!r}", line_no, column)
        opcode, arity = entry

        operands = tokens[1:]
        if len(operands) != arity:
            raise SpecParseError(
                f"{word.upper()} takes {arity} operand(s), got {len(operands)}",
                line_no,
                column,
            )
        values = [_parse_operand(tok, line_no, col) for tok, col in operands]

        if opcode == Opcode.INC:
            code.append(Instruction(opcode, register=values[0]))
        elif opcode == Opcode.JZDEC:
            code.append(Instruction(opcode, register=values[0], target=values[1]))
        elif opcode == Opcode.JMP:
            code.append(Instruction(opcode, target=values[0]))
        else:
            code.append(Instruction(opcode))
    return tuple(code)


def assemble(text: str) -> Program:
    code = parse_asm(text)
    return Program(code=code, index=encode_program(code))


def disassemble(program) -> str:
    """Assembly text for a Program or a program index, one instruction per line."""
    if isinstance(program, int):
        program = decode_program(program)
    return "".join(f"{ins}\n" for ins in program.code)
