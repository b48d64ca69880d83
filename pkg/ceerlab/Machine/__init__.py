from .Machine import DEFAULT_MACHINE, Machine, phi_stage, resolve, we_stage
from .encoding import (
    decode_program,
    encode_program,
    encode_tuple,
    pad,
    pair,
    unpair,
    word_code,
    word_decode,
)
from .parsers.asm_parser import assemble, disassemble, parse_asm

__all__ = [
    "DEFAULT_MACHINE",
    "Machine",
    "phi_stage",
    "we_stage",
    "resolve",
    "decode_program",
    "encode_program",
    "encode_tuple",
    "pad",
    "pair",
    "unpair",
    "word_code",
    "word_decode",
    "assemble",
    "disassemble",
    "parse_asm",
]
