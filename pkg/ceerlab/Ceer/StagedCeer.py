"""
StagedCeer - a ceer presented as a monotone family of decidable relations.

Every StagedCeer answers decide_at(s, x, y) for the stage-s relation R_s:

- R_0 is equality
- each R_s is an equivalence relation on omega
- R_s is contained in R_{s+1}

Decidable leaves use the canonical approximation
R_s = (R restricted to [0, s)^2) together with equality, so that on [0, N]^2 the
relation is exact from stage N + 1 on. Leaves that consult the machine (W_e
based ones) read W_{e,s} at stage s; combinators compose stage-wise.
"""

import logging
import threading
from abc import ABC, abstractmethod
from bisect import bisect_right
from collections import OrderedDict
from itertools import accumulate
from typing import Dict, FrozenSet, List, Optional, Tuple

from ceerlab.config import DEFAULT_STAGE_CACHE
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
from ceerlab.Machine.Machine import Machine, resolve
from ceerlab.Machine.encoding import unpair

logger = logging.getLogger(__name__)


class StagedCeer(ABC):
    """Base class: `decide_at` handles equality and stage 0, subclasses the rest."""

    def __init__(self, descriptor: CeerSpec):
        self._descriptor = descriptor

    @property
    def descriptor(self) -> CeerSpec:
        """The CeerSpec tree this ceer was built from (read-only)."""
        return self._descriptor

    def decide_at(self, s: int, x: int, y: int) -> bool:
        if x == y:
            return True
        if s <= 0:
            return False
        return self._related(s, x, y)

    @abstractmethod
    def _related(self, s: int, x: int, y: int) -> bool:
        """Stage-s relation for x != y and s >= 1."""

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self._descriptor!r})"


# ------------------------------------------------------------------ #
# Decidable leaves
# ------------------------------------------------------------------ #
class DecidableCeer(StagedCeer):
    """A decidable ceer under the canonical approximation."""

    def _related(self, s: int, x: int, y: int) -> bool:
        return x < s and y < s and self.related(x, y)

    @abstractmethod
    def related(self, x: int, y: int) -> bool:
        """The limit relation itself."""


class IdentityCeer(DecidableCeer):
    def __init__(self, descriptor: CeerSpec = IdOmega()):
        super().__init__(descriptor)

    def related(self, x: int, y: int) -> bool:
        return x == y


class FiniteIdentityCeer(DecidableCeer):
    """Id_n: singletons {0}, ..., {n-2} and one cofinite class [n-1, oo)."""

    def __init__(self, n: int):
        super().__init__(IdN(n))
        self.n = n

    def related(self, x: int, y: int) -> bool:
        return x == y or (x >= self.n - 1 and y >= self.n - 1)


class ModCeer(DecidableCeer):
    def __init__(self, k: int):
        super().__init__(Mod(k))
        self.k = k

    def related(self, x: int, y: int) -> bool:
        return x % self.k == y % self.k


class IntervalsCeer(DecidableCeer):
    """Consecutive blocks of the given sizes, then singletons."""

    def __init__(self, sizes: Tuple[int, ...]):
        super().__init__(Intervals(tuple(sizes)))
        self._ends = list(accumulate(sizes))  # exclusive block ends

    def block_of(self, x: int) -> Optional[int]:
        """Index of the block holding x, or None in the singleton tail."""
        if not self._ends or x >= self._ends[-1]:
            return None
        return bisect_right(self._ends, x)

    def related(self, x: int, y: int) -> bool:
        if x == y:
            return True
        block = self.block_of(x)
        return block is not None and block == self.block_of(y)


class FiniteSetCeer(DecidableCeer):
    """Unidimensional R_X for an explicit finite X."""

    def __init__(self, members: FrozenSet[int]):
        super().__init__(UniSet(frozenset(members)))
        self.members = frozenset(members)

    def related(self, x: int, y: int) -> bool:
        return x == y or (x in self.members and y in self.members)


# ------------------------------------------------------------------ #
# Leaves read from the machine
# ------------------------------------------------------------------ #
class CeSetCeer(StagedCeer):
    """Unidimensional R_X for X = W_e: x, y related once both are in W_{e,s}."""

    def __init__(self, e: int, machine: Optional[Machine] = None):
        super().__init__(UniCe(e))
        self.e = e
        self._machine = resolve(machine)

    def _related(self, s: int, x: int, y: int) -> bool:
        if x >= s or y >= s:
            return False
        return (
            self._machine.phi_stage(self.e, x, s) is not None
            and self._machine.phi_stage(self.e, y, s) is not None
        )


class PairsCeer(StagedCeer):
    """
    Equivalence closure of the pairs unpair(n) for n in W_{e,s}.

    The closure is recomputed per stage by union-find and memoized for the
    `stage_cache` most recently used stages.
    """

    def __init__(self, e: int, machine: Optional[Machine] = None, stage_cache: int = DEFAULT_STAGE_CACHE):
        super().__init__(FromPairs(e))
        self.e = e
        self._machine = resolve(machine)
        self.stage_cache = max(1, stage_cache)
        self._leaders: "OrderedDict[int, Dict[int, int]]" = OrderedDict()
        self._lock = threading.Lock()

    def _leaders_at(self, s: int) -> Dict[int, int]:
        with self._lock:
            cached = self._leaders.get(s)
            if cached is not None:
                self._leaders.move_to_end(s)
                return cached

        parent: Dict[int, int] = {}

        def find(x: int) -> int:
            root = x
            while parent.get(root, root) != root:
                root = parent[root]
            while parent.get(x, x) != root:
                parent[x], x = root, parent[x]
            return root

        for n in sorted(self._machine.we_stage(self.e, s)):
            a, b = unpair(n)
            ra, rb = find(a), find(b)
            if ra != rb:
                # smaller element becomes the root
                parent[max(ra, rb)] = min(ra, rb)

        leaders = {x: find(x) for x in list(parent)}
        logger.debug("pairs from W_%d at stage %d touch %d elements", self.e, s, len(leaders))
        with self._lock:
            self._leaders[s] = leaders
            while len(self._leaders) > self.stage_cache:
                self._leaders.popitem(last=False)
        return leaders

    @property
    def cached_stages(self) -> int:
        return len(self._leaders)

    def _related(self, s: int, x: int, y: int) -> bool:
        leaders = self._leaders_at(s)
        return leaders.get(x, x) == leaders.get(y, y)


# ------------------------------------------------------------------ #
# Combinators
# ------------------------------------------------------------------ #
class CylinderCeer(StagedCeer):
    """<i, x> ~ <j, y> at s iff i R_s j, once both x and y are below s."""

    def __init__(self, inner: StagedCeer):
        super().__init__(Cylindrify(inner.descriptor))
        self.inner = inner

    def _related(self, s: int, x: int, y: int) -> bool:
        i, u = unpair(x)
        j, v = unpair(y)
        return u < s and v < s and self.inner.decide_at(s, i, j)


class JoinCeer(StagedCeer):
    """Uniform join: evens carry the left ceer, odds the right one."""

    def __init__(self, left: StagedCeer, right: StagedCeer):
        super().__init__(UniformJoin(left.descriptor, right.descriptor))
        self.left = left
        self.right = right

    def _related(self, s: int, x: int, y: int) -> bool:
        if x % 2 != y % 2:
            return False
        side = self.left if x % 2 == 0 else self.right
        return side.decide_at(s, x // 2, y // 2)


class RestrictedCeer(StagedCeer):
    """
    R pulled back along the surjection computed by program `surjection`.

    pi(x) is read as phi_{pi,s}(x); an input on which pi has not converged by
    stage s stays discrete at that stage.
    """

    def __init__(self, inner: StagedCeer, surjection: int, machine: Optional[Machine] = None):
        super().__init__(Restrict(inner.descriptor, surjection))
        self.inner = inner
        self.surjection = surjection
        self._machine = resolve(machine)

    def image_at(self, s: int, x: int) -> Optional[int]:
        return self._machine.phi_stage(self.surjection, x, s)

    def _related(self, s: int, x: int, y: int) -> bool:
        px = self.image_at(s, x)
        if px is None:
            return False
        py = self.image_at(s, y)
        if py is None:
            return False
        return self.inner.decide_at(s, px, py)

    def divergent_inputs(self, N: int, stage: int) -> List[int]:
        """Inputs x <= N on which the surjection has not converged by `stage`."""
        return [x for x in range(N + 1) if self.image_at(stage, x) is None]
