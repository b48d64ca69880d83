"""
Algebra files:

    generators: 0 1
    op arity=1 program=2
    op arity=2 program=517
    wp: (mod 3)

`#` starts a comment. The generators line comes first, then any number of
op lines, then the wp line, whose spec may continue over later lines.
"""

import re
from typing import List, Optional

from ceerlab.CeerLabError import SpecParseError
from ceerlab.Ceer.builder import build
from ceerlab.Ceer.parsers.spec_parser import parse_spec
from ceerlab.Machine.Machine import Machine
from ceerlab.models import AlgebraOperation, AlgebraPresentation

_OP_LINE = re.compile(r"^op\s+arity=([0-9]+)\s+program=([0-9]+)\s*$")
_NATURAL = re.compile(r"[0-9]+")


def parse_algebra(text: str, machine: Optional[Machine] = None) -> AlgebraPresentation:
    generators: Optional[frozenset] = None
    ops: List[AlgebraOperation] = []
    lines = text.split("\n")

    for number, raw in enumerate(lines, start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        column = raw.index(body[0]) + 1

        if body.startswith("generators:"):
            if generators is not None:
                raise SpecParseError("duplicate generators line", number, column)
            values = body[len("generators:"):].replace(",", " ").split()
            for value in values:
                if not _NATURAL.fullmatch(value):
                    raise SpecParseError(f"generator {value!r} is not a natural number", number, column)
            if not values:
                raise SpecParseError("the generator set must be nonempty", number, column)
            generators = frozenset(int(v) for v in values)
            continue

        if generators is None:
            raise SpecParseError("expected the generators line first", number, column)

        match = _OP_LINE.match(body)
        if match:
            ops.append(AlgebraOperation(arity=int(match.group(1)), program=int(match.group(2))))
            continue

        if body.startswith("wp:"):
            rest = "\n".join([raw.split("#", 1)[0].split("wp:", 1)[1]] + [
                line.split("#", 1)[0] for line in lines[number:]
            ])
            try:
                spec = parse_spec(rest)
            except SpecParseError as err:
                # shift positions back into file coordinates
                line = number + err.line - 1
                offset = raw.index("wp:") + 3 if err.line == 1 else 0
                raise SpecParseError(err.reason, line, err.column + offset) from None
            if not ops:
                raise SpecParseError("an algebra needs at least one operation", number, column)
            return AlgebraPresentation(ops=tuple(ops), wp=build(spec, machine), generators=generators)

        raise SpecParseError(f"unrecognised line {body!r}", number, column)

    raise SpecParseError("missing wp line", len(lines), 1)
