"""
TraceWriter - line-oriented trace of a construction run.

Lines look like `<stage> act <e>`, `<stage> pick <n> <x>`, `<stage> serve <i> <w>`,
`<stage> idle` and `level <i> <size>`; one line per stage for the stage
constructions. The lines are always kept in memory, and streamed to a file
as well when a path is given.
"""

import logging
from pathlib import Path
from typing import List, Optional, TextIO, Union

logger = logging.getLogger(__name__)


class TraceWriter:
    def __init__(self, path: Optional[Union[str, Path]] = None):
        self._path = Path(path) if path is not None else None
        self._lines: List[str] = []
        self._handle: Optional[TextIO] = None
        if self._path is not None:
            self._handle = self._path.open("w", encoding="utf-8")

    @property
    def lines(self) -> List[str]:
        """Trace lines written so far (read-only copy)."""
        return list(self._lines)

    @property
    def path(self) -> Optional[Path]:
        return self._path

    def write(self, line: str) -> None:
        self._lines.append(line)
        if self._handle is not None:
            self._handle.write(line + "\n")

    def act(self, stage: int, e: int) -> None:
        self.write(f"{stage} act {e}")

    def pick(self, stage: int, n: int, x: int) -> None:
        self.write(f"{stage} pick {n} {x}")

    def serve(self, stage: int, i: int, word: str) -> None:
        self.write(f"{stage} serve {i} {word}")

    def idle(self, stage: int) -> None:
        self.write(f"{stage} idle")

    def level(self, i: int, size: int) -> None:
        self.write(f"level {i} {size}")

    def close(self) -> None:
        if self._handle is not None:
            self._handle.close()
            self._handle = None
            logger.info("trace written to %s (%d lines)", self._path, len(self._lines))

    def __enter__(self) -> "TraceWriter":
        return self

    def __exit__(self, *exc) -> None:
        self.close()


def resolve_trace(trace: Optional[TraceWriter]) -> TraceWriter:
    return TraceWriter() if trace is None else trace
