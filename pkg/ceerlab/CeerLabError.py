from typing import Iterable, Tuple


class CeerLabError(ValueError):
    """Base class for every ceerlab domain error."""

    pass


class SpecParseError(CeerLabError):
    """Malformed spec, assembly or algebra text; carries line and column."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        self.line = line
        self.column = column
        self.reason = message
        super().__init__(f"line {line}, column {column}: {message}")


class SpecShapeError(CeerLabError):
    """A CeerSpec tree that parses but is not well formed (e.g. IdN(0))."""

    pass


class HorizonError(CeerLabError):
    """Fewer class representatives exist below the horizon than requested."""

    pass


class PartialFunctionError(CeerLabError):
    """A program that must be total diverged on some required inputs."""

    def __init__(self, program: int, inputs: Iterable[int], budget: int):
        self.program = program
        self.inputs: Tuple[int, ...] = tuple(inputs)
        self.budget = budget
        shown = " ".join(str(i) for i in self.inputs[:20])
        more = " ..." if len(self.inputs) > 20 else ""
        super().__init__(
            f"program {program} is partial: no value within {budget} steps "
            f"on input(s) {shown}{more}"
        )


class NonInjectiveError(CeerLabError):
    """Array transport needs a 1-1 map on the array support."""

    pass


class WordError(CeerLabError):
    """Empty word, or a symbol outside the alphabet {a, b}."""

    pass


class BudgetExceededError(CeerLabError):
    """A construction ran out of its wall-clock budget; keeps the partial trace."""

    def __init__(self, message: str, stage: int, trace_lines=()):
        self.stage = stage
        self.trace_lines = list(trace_lines)
        super().__init__(message)
