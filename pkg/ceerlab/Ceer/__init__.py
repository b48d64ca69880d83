from .StagedCeer import StagedCeer
from .builder import (
    build,
    check_convergence,
    cylindrify,
    plus_idn,
    restrict,
    uniform_join,
    uniform_join_many,
    validate,
)
from .helpers import classes_at, format_classes, is_equivalence_at, is_monotone_on, limit_equal_on
from .reductions import (
    check_reduction,
    compose_reduction,
    evaluate_total,
    image_of_array_under_reduction,
)
from .parsers.spec_parser import format_spec, parse_spec

__all__ = [
    "StagedCeer",
    "build",
    "check_convergence",
    "cylindrify",
    "plus_idn",
    "restrict",
    "uniform_join",
    "uniform_join_many",
    "validate",
    "classes_at",
    "format_classes",
    "is_equivalence_at",
    "is_monotone_on",
    "limit_equal_on",
    "check_reduction",
    "compose_reduction",
    "evaluate_total",
    "image_of_array_under_reduction",
    "format_spec",
    "parse_spec",
]
