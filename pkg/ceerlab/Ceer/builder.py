import warnings
from typing import List, Optional

from ceerlab.CeerLabError import SpecShapeError
from ceerlab.CeerLabWarning import ConvergenceWarning
from ceerlab.config import DEFAULT_CONVERGENCE_STAGE
from ceerlab.models import (
    CeerSpec,
    Constructed,
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
from ceerlab.Machine.Machine import Machine
from .StagedCeer import (
    CeSetCeer,
    CylinderCeer,
    FiniteIdentityCeer,
    FiniteSetCeer,
    IdentityCeer,
    IntervalsCeer,
    JoinCeer,
    ModCeer,
    PairsCeer,
    RestrictedCeer,
    StagedCeer,
)


def _natural(value, what: str) -> None:
    if not isinstance(value, int) or isinstance(value, bool) or value < 0:
        raise SpecShapeError(f"{what} must be a natural number, got {value!r}")


def validate(spec: CeerSpec) -> None:
    """Raise SpecShapeError unless `spec` is a well-formed combinator tree."""
    if isinstance(spec, IdOmega):
        return
    if isinstance(spec, IdN):
        _natural(spec.n, "idn size")
        if spec.n < 1:
            raise SpecShapeError(f"idn needs n >= 1, got {spec.n}")
    elif isinstance(spec, Mod):
        _natural(spec.k, "mod modulus")
        if spec.k < 1:
            raise SpecShapeError(f"mod needs k >= 1, got {spec.k}")
    elif isinstance(spec, Intervals):
        for size in spec.sizes:
            _natural(size, "interval size")
            if size < 1:
                raise SpecShapeError(f"interval sizes must be >= 1, got {size}")
    elif isinstance(spec, UniSet):
        for x in spec.members:
            _natural(x, "set member")
    elif isinstance(spec, (UniCe, FromPairs)):
        _natural(spec.index, "program index")
    elif isinstance(spec, Cylindrify):
        validate(spec.inner)
    elif isinstance(spec, UniformJoin):
        validate(spec.left)
        validate(spec.right)
    elif isinstance(spec, Restrict):
        _natural(spec.surjection, "program index")
        validate(spec.inner)
    elif isinstance(spec, Constructed):
        raise SpecShapeError(f"{spec.name!r} is a constructed ceer and cannot be rebuilt")
    else:
        raise SpecShapeError(f"unknown spec node {type(spec).__name__}")


def build(spec: CeerSpec, machine: Optional[Machine] = None) -> StagedCeer:
    """Build the StagedCeer a well-formed CeerSpec describes."""
    validate(spec)
    return _build(spec, machine)


def _build(spec: CeerSpec, machine: Optional[Machine]) -> StagedCeer:
    if isinstance(spec, IdOmega):
        return IdentityCeer()
    if isinstance(spec, IdN):
        return FiniteIdentityCeer(spec.n)
    if isinstance(spec, Mod):
        return ModCeer(spec.k)
    if isinstance(spec, Intervals):
        return IntervalsCeer(spec.sizes)
    if isinstance(spec, UniSet):
        return FiniteSetCeer(spec.members)
    if isinstance(spec, UniCe):
        return CeSetCeer(spec.index, machine)
    if isinstance(spec, FromPairs):
        return PairsCeer(spec.index, machine)
    if isinstance(spec, Cylindrify):
        return cylindrify(_build(spec.inner, machine))
    if isinstance(spec, UniformJoin):
        return uniform_join(_build(spec.left, machine), _build(spec.right, machine))
    return restrict(_build(spec.inner, machine), spec.surjection, machine)


# ------------------------------------------------------------------ #
# Combinators
# ------------------------------------------------------------------ #
def cylindrify(R: StagedCeer) -> StagedCeer:
    return CylinderCeer(R)


def uniform_join(R: StagedCeer, S: StagedCeer) -> StagedCeer:
    return JoinCeer(R, S)


def uniform_join_many(*ceers: StagedCeer) -> StagedCeer:
    """Right-nested join R1 + (R2 + (... + Rk))."""
    if not ceers:
        raise SpecShapeError("uniform_join_many needs at least one ceer")
    result = ceers[-1]
    for R in reversed(ceers[:-1]):
        result = uniform_join(R, result)
    return result


def restrict(R: StagedCeer, surjection: int, machine: Optional[Machine] = None) -> StagedCeer:
    _natural(surjection, "program index")
    return RestrictedCeer(R, surjection, machine)


def plus_idn(S: StagedCeer, n: int) -> StagedCeer:
    """S + Id_n, the target of a finite-pad reduction."""
    return uniform_join(S, build(IdN(n)))


def check_convergence(
    R: StagedCeer, N: int, stage: int = DEFAULT_CONVERGENCE_STAGE
) -> List[int]:
    """
    Inputs x <= N on which some restriction surjection inside R has not
    converged by `stage`. A ConvergenceWarning is issued when there are any.
    """
    missing: List[int] = []
    for node in _restrictions(R):
        divergent = node.divergent_inputs(N, stage)
        if divergent:
            warnings.warn(
                f"surjection {node.surjection} has not converged by stage {stage} "
                f"on inputs {' '.join(map(str, divergent[:20]))}; those points stay discrete",
                ConvergenceWarning,
                stacklevel=2,
            )
        missing.extend(divergent)
    return sorted(set(missing))


def _restrictions(R: StagedCeer) -> List[RestrictedCeer]:
    found: List[RestrictedCeer] = []
    stack = [R]
    while stack:
        node = stack.pop()
        if isinstance(node, RestrictedCeer):
            found.append(node)
            stack.append(node.inner)
        elif isinstance(node, CylinderCeer):
            stack.append(node.inner)
        elif isinstance(node, JoinCeer):
            stack.extend([node.left, node.right])
    return found
