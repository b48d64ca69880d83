"""
Text form of CeerSpec trees.

    (id)  (idn 3)  (mod 5)  (intervals 2 2 3)  (uni {0,1,2})
    (uni-ce 17)  (pairs 23)  (cyl E)  (join E F)  (restrict E 12)

Trailing naturals of uni-ce, pairs and restrict are program indices.
Whitespace (newlines included) separates tokens; `;` starts a comment.
"""

import re
from dataclasses import dataclass
from typing import List

from ceerlab.CeerLabError import SpecParseError, SpecShapeError
from ceerlab.models import (
    CeerSpec,
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

_PUNCTUATION = "(){},"
_NATURAL = re.compile(r"[0-9]+")


@dataclass(frozen=True)
class _Token:
    text: str
    line: int
    column: int


def _tokenize(text: str) -> List[_Token]:
    tokens: List[_Token] = []
    line, column = 1, 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line, column = line + 1, 1
            i += 1
            continue
        if ch.isspace():
            i += 1
            column += 1
            continue
        if ch == ";":
            while i < len(text) and text[i] != "\n":
                i += 1
            continue
        if ch in _PUNCTUATION:
            tokens.append(_Token(ch, line, column))
            i += 1
            column += 1
            continue
        start = i
        while i < len(text) and not text[i].isspace() and text[i] not in _PUNCTUATION + ";":
            i += 1
        tokens.append(_Token(text[start:i], line, column))
        column += i - start
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0
        lines = text.split("\n")
        self.end_line = len(lines)
        self.end_column = len(lines[-1]) + 1

    def _error(self, message: str, token=None) -> SpecParseError:
        if token is None:
            return SpecParseError(message, self.end_line, self.end_column)
        return SpecParseError(message, token.line, token.column)

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, what: str) -> _Token:
        token = self.peek()
        if token is None:
            raise self._error(f"unexpected end of input, expected {what}")
        self.pos += 1
        return token

    def expect(self, text: str) -> _Token:
        token = self.take(f"'{text}'")
        if token.text != text:
            raise self._error(f"expected '{text}', got {token.text!r}", token)
        return token

    def natural(self) -> int:
        token = self.take("a natural number")
        if not _NATURAL.fullmatch(token.text):
            raise self._error(f"expected a natural number, got {token.text!r}", token)
        return int(token.text)

    def at_close(self) -> bool:
        token = self.peek()
        return token is not None and token.text == ")"

    def spec(self) -> CeerSpec:
        self.expect("(")
        head = self.take("a spec name")
        name = head.text

        if name == "id":
            node: CeerSpec = IdOmega()
        elif name in ("idn", "mod"):
            value = self.natural()
            if value < 1:
                raise self._error(f"{name} needs a value >= 1, got {value}", head)
            node = IdN(value) if name == "idn" else Mod(value)
        elif name == "intervals":
            sizes = []
            while not self.at_close():
                token = self.peek()
                size = self.natural()
                if size < 1:
                    raise self._error("interval sizes must be >= 1", token)
                sizes.append(size)
            node = Intervals(tuple(sizes))
        elif name == "uni":
            node = UniSet(self.finite_set())
        elif name == "uni-ce":
            node = UniCe(self.natural())
        elif name == "pairs":
            node = FromPairs(self.natural())
        elif name == "cyl":
            node = Cylindrify(self.spec())
        elif name == "join":
            left = self.spec()
            node = UniformJoin(left, self.spec())
        elif name == "restrict":
            inner = self.spec()
            node = Restrict(inner, self.natural())
        else:
            raise self._error(f"unknown spec {name!r}", head)

        self.expect(")")
        return node

    def finite_set(self) -> frozenset:
        self.expect("{")
        members = set()
        token = self.peek()
        if token is not None and token.text == "}":
            self.pos += 1
            return frozenset()
        while True:
            members.add(self.natural())
            sep = self.take("',' or '}'")
            if sep.text == "}":
                return frozenset(members)
            if sep.text != ",":
                raise self._error(f"expected ',' or '}}', got {sep.text!r}", sep)


def parse_spec(text: str) -> CeerSpec:
    """Parse one spec; anything after it is an error."""
    parser = _Parser(text)
    node = parser.spec()
    extra = parser.peek()
    if extra is not None:
        raise parser._error(f"unexpected {extra.text!r} after the spec", extra)
    return node


def format_spec(spec: CeerSpec) -> str:
    """Canonical text for a spec; parse_spec(format_spec(t)) == t."""
    if isinstance(spec, IdOmega):
        return "(id)"
    if isinstance(spec, IdN):
        return f"(idn {spec.n})"
    if isinstance(spec, Mod):
        return f"(mod {spec.k})"
    if isinstance(spec, Intervals):
        return "(intervals" + "".join(f" {n}" for n in spec.sizes) + ")"
    if isinstance(spec, UniSet):
        return "(uni {" + ",".join(str(x) for x in sorted(spec.members)) + "})"
    if isinstance(spec, UniCe):
        return f"(uni-ce {spec.index})"
    if isinstance(spec, FromPairs):
        return f"(pairs {spec.index})"
    if isinstance(spec, Cylindrify):
        return f"(cyl {format_spec(spec.inner)})"
    if isinstance(spec, UniformJoin):
        return f"(join {format_spec(spec.left)} {format_spec(spec.right)})"
    if isinstance(spec, Restrict):
        return f"(restrict {format_spec(spec.inner)} {spec.surjection})"
    raise SpecShapeError(f"{type(spec).__name__} has no text form")
