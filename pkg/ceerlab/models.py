"""
ceerlab Models - Data structures and type definitions.

Contains:
- Enums for machine opcodes, strata and verdicts
- Dataclasses for programs and their stage outcomes
- The CeerSpec combinator tree
- State records for the stage constructions
- Report records shared by the command line front door
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field
from enum import Enum, IntEnum
from typing import TYPE_CHECKING, Any, Dict, FrozenSet, List, Optional, Tuple

from ceerlab.CeerLabError import CeerLabError

if TYPE_CHECKING:
    from ceerlab.Ceer.StagedCeer import StagedCeer


# =============================================================================
# Register Machine
# =============================================================================


class Opcode(IntEnum):
    """Unlimited register machine opcodes."""

    HALT = 0
    INC = 1  # INC r
    JZDEC = 2  # JZDEC r t: if r = 0 jump to t, else decrement r
    JMP = 3  # JMP t


@dataclass(frozen=True)
class Instruction:
    """One machine instruction. A jump target past the end means HALT."""

    opcode: Opcode
    register: int = 0
    target: int = 0

    def __str__(self) -> str:
        if self.opcode == Opcode.INC:
            return f"INC {self.register}"
        if self.opcode == Opcode.JZDEC:
            return f"JZDEC {self.register} {self.target}"
        if self.opcode == Opcode.JMP:
            return f"JMP {self.target}"
        return "HALT"


@dataclass(frozen=True)
class Program:
    """A decoded program together with its Goedel number."""

    code: Tuple[Instruction, ...]
    index: int

    @property
    def has_conditional(self) -> bool:
        """Control flow depends on register contents only through JZDEC."""
        return any(ins.opcode == Opcode.JZDEC for ins in self.code)


class OutcomeStatus(Enum):
    HALTED = "halted"
    RUNNING = "running"


@dataclass(frozen=True)
class StageOutcome:
    """Bounded execution result. `value` is meaningful only when halted."""

    status: OutcomeStatus
    value: Optional[int] = None
    steps: int = 0

    @property
    def halted(self) -> bool:
        return self.status == OutcomeStatus.HALTED


# =============================================================================
# Ceer Specifications (combinator trees)
# =============================================================================


@dataclass(frozen=True)
class CeerSpec:
    """Base node of a ceer combinator tree."""


@dataclass(frozen=True)
class IdOmega(CeerSpec):
    """Equality on omega."""


@dataclass(frozen=True)
class IdN(CeerSpec):
    """Exactly n classes: {0}, ..., {n-2} and the cofinite class [n-1, oo)."""

    n: int


@dataclass(frozen=True)
class Mod(CeerSpec):
    """Congruence modulo k."""

    k: int


@dataclass(frozen=True)
class Intervals(CeerSpec):
    """Consecutive blocks of the given sizes, singletons afterwards."""

    sizes: Tuple[int, ...]


@dataclass(frozen=True)
class UniSet(CeerSpec):
    """Unidimensional ceer R_X of an explicit finite set X."""

    members: FrozenSet[int]


@dataclass(frozen=True)
class UniCe(CeerSpec):
    """Unidimensional ceer R_X of the c.e. set X = W_e."""

    index: int


@dataclass(frozen=True)
class FromPairs(CeerSpec):
    """Equivalence closure of the pairs unpair(n), n in W_e."""

    index: int


@dataclass(frozen=True)
class Cylindrify(CeerSpec):
    inner: CeerSpec


@dataclass(frozen=True)
class UniformJoin(CeerSpec):
    left: CeerSpec
    right: CeerSpec


@dataclass(frozen=True)
class Restrict(CeerSpec):
    """R restricted along the surjection computed by program `surjection`."""

    inner: CeerSpec
    surjection: int


@dataclass(frozen=True)
class Constructed(CeerSpec):
    """A ceer produced by a stage construction rather than written as a tree."""

    name: str


# =============================================================================
# Arrays, Transversals, Reductions
# =============================================================================


@dataclass(frozen=True)
class StrongArray:
    """Pairwise-disjoint finite sets, stored explicitly."""

    sets: Tuple[FrozenSet[int], ...]

    def __post_init__(self):
        seen: Dict[int, int] = {}
        for n, members in enumerate(self.sets):
            for x in members:
                if x in seen:
                    raise CeerLabError(
                        f"array is not disjoint: {x} lies in sets {seen[x]} and {n}"
                    )
                seen[x] = n

    @classmethod
    def of(cls, *sets) -> "StrongArray":
        return cls(tuple(frozenset(s) for s in sets))

    @property
    def support(self) -> FrozenSet[int]:
        return frozenset().union(*self.sets) if self.sets else frozenset()

    def __len__(self) -> int:
        return len(self.sets)


@dataclass(frozen=True)
class TransversalSample:
    """Strictly increasing elements, pairwise non-related at `stage`."""

    elements: Tuple[int, ...]
    stage: int

    def __len__(self) -> int:
        return len(self.elements)

    def to_dict(self) -> Dict[str, Any]:
        return {"elements": list(self.elements), "certified_stage": self.stage}


class Side(Enum):
    FORWARD = "forward"
    BACKWARD = "backward"


REDUCTION_CAVEAT = (
    "stage-bounded check: a consistent verdict is necessary, not sufficient, "
    "for a reduction"
)


@dataclass(frozen=True)
class ReductionVerdict:
    """Result of a bounded two-sided reduction check."""

    stage: int
    horizon: int
    lookahead: int
    counterexample: Optional[Tuple[int, int, Side]] = None
    caveat: str = REDUCTION_CAVEAT

    @property
    def consistent(self) -> bool:
        return self.counterexample is None

    def __str__(self) -> str:
        if self.counterexample is None:
            return "consistent"
        x, y, side = self.counterexample
        return f"counterexample {x} {y} {side.value}"


# =============================================================================
# Construction States
# =============================================================================


@dataclass(frozen=True)
class AllHighAction:
    """Requirement `requirement` acted at `stage`."""

    stage: int
    requirement: int
    f_value: int
    hi_before: int
    hi_after: int


@dataclass(frozen=True)
class IntervalPartition:
    """
    Consecutive closed intervals covering omega: an explicit prefix of
    (lo, hi) pairs, then singletons continuing consecutively.
    """

    intervals: Tuple[Tuple[int, int], ...] = ()
    stage: int = 0
    log: Tuple[AllHighAction, ...] = ()

    @property
    def tail_start(self) -> int:
        return self.intervals[-1][1] + 1 if self.intervals else 0

    def interval(self, j: int) -> Tuple[int, int]:
        if j < len(self.intervals):
            return self.intervals[j]
        x = self.tail_start + (j - len(self.intervals))
        return (x, x)

    def lo(self, j: int) -> int:
        return self.interval(j)[0]

    def hi(self, j: int) -> int:
        return self.interval(j)[1]

    def index_of(self, x: int) -> int:
        """Index j of the interval containing x."""
        if x >= self.tail_start:
            return len(self.intervals) + (x - self.tail_start)
        los = [lo for lo, _ in self.intervals]
        return bisect_right(los, x) - 1


@dataclass(frozen=True)
class ArrayState:
    """Stage-s approximation F_{n,s} of a disjoint array."""

    sets: Tuple[FrozenSet[int], ...] = ()
    stage: int = 0
    pick_log: Tuple[Tuple[int, int, int], ...] = ()  # (stage, n, x)

    @property
    def support(self) -> FrozenSet[int]:
        return frozenset().union(*self.sets) if self.sets else frozenset()

    def get(self, n: int) -> FrozenSet[int]:
        return self.sets[n] if n < len(self.sets) else frozenset()


@dataclass(frozen=True)
class SimpleSetState:
    """Words enumerated into Z so far, and the index each was served for."""

    members: FrozenSet[str] = frozenset()
    served: Tuple[Tuple[int, str], ...] = ()  # (i, word), in serving order
    stage: int = 0

    @property
    def used_indices(self) -> FrozenSet[int]:
        return frozenset(i for i, _ in self.served)


@dataclass(frozen=True)
class AlgebraOperation:
    arity: int
    program: int


@dataclass(frozen=True)
class AlgebraPresentation:
    """A c.e. algebra: operations as programs, its word problem, generators."""

    ops: Tuple[AlgebraOperation, ...]
    wp: "StagedCeer"
    generators: FrozenSet[int]


@dataclass(frozen=True)
class KKExtraction:
    """Generation levels, the extracted transversal and its majorizer m."""

    levels: Tuple[FrozenSet[int], ...]
    transversal: TransversalSample
    majorizer: Tuple[int, ...]
    picks: Tuple[int, ...]  # y_i in generation order
    stalled_at: Optional[int] = None


# =============================================================================
# Semigroup Words
# =============================================================================


class StratumKind(Enum):
    CODING = "coding"
    CONTAINS_CODING = "contains-coding"
    AVOIDING = "avoiding"


@dataclass(frozen=True)
class Stratum:
    kind: StratumKind
    exponent: Optional[int] = None  # i for the coding word a b^i a

    def __str__(self) -> str:
        if self.kind == StratumKind.CODING:
            return f"coding {self.exponent}"
        return self.kind.value


class PresentationKind(Enum):
    SR = "sr"
    FINCL = "fincl"


@dataclass(frozen=True)
class Presentation:
    kind: PresentationKind
    ceer: "StagedCeer"


@dataclass(frozen=True)
class ClosureResult:
    """Visited set of a bounded breadth-first congruence closure."""

    words: FrozenSet[str]
    truncated: bool = False  # the visited-set cap was hit
    length_bounded: bool = False  # some rewrite was skipped by the length bound

    @property
    def complete(self) -> bool:
        return not (self.truncated or self.length_bounded)

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, word: str) -> bool:
        return word in self.words


class Decision(Enum):
    EQUAL = "equal"
    DISTINCT = "distinct"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class ClassSize:
    size: int
    truncated: bool
    predicted: Optional[int] = None


# =============================================================================
# Reports
# =============================================================================


@dataclass(frozen=True)
class InvariantCheck:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class RunReport:
    """Everything one command produced, in a stable field order."""

    command: str
    construction: str
    stages: int
    horizon: int
    results: Dict[str, Any] = field(default_factory=dict)
    checks: List[InvariantCheck] = field(default_factory=list)
    trace_path: Optional[str] = None

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)


# =============================================================================
# Construction Runs
# =============================================================================


@dataclass
class AllHighRun:
    """Final partition of the interval construction and its stage history."""

    partition: IntervalPartition
    ceer: "StagedCeer"
    f_values: Tuple[int, ...]  # f_stage(e, S) for e <= S
    pending: Tuple[int, ...]  # requirements asking for attention at stage S + 1
    checks: List[InvariantCheck] = field(default_factory=list)
    trace: List[str] = field(default_factory=list)

    @property
    def stages(self) -> int:
        return self.partition.stage


@dataclass
class WeakArrayRun:
    state: ArrayState
    transversal: TransversalSample
    stabilized: int  # F_0 .. F_{stabilized-1} are not covered at the last stage
    checks: List[InvariantCheck] = field(default_factory=list)
    trace: List[str] = field(default_factory=list)


@dataclass
class PostSimpleRun:
    state: SimpleSetState
    census: Dict[int, int] = field(default_factory=dict)  # length -> avoiding words
    checks: List[InvariantCheck] = field(default_factory=list)
    trace: List[str] = field(default_factory=list)
