from .allhigh import (
    FTable,
    IntervalHistoryCeer,
    allhigh_run,
    allhigh_settled_table,
    allhigh_step,
    f_stage,
    initial_partition,
)
from .weakarray import derived_transversal, weakarray_run, weakarray_step
from .postsimple import avoidance_census, postsimple_run, postsimple_step, subword_closure_member
from .kk_extract import kk_extract, level_array, next_level
from .trace import TraceWriter
from .parsers.algebra_parser import parse_algebra

__all__ = [
    "FTable",
    "IntervalHistoryCeer",
    "allhigh_run",
    "allhigh_settled_table",
    "allhigh_step",
    "f_stage",
    "initial_partition",
    "derived_transversal",
    "weakarray_run",
    "weakarray_step",
    "avoidance_census",
    "postsimple_run",
    "postsimple_step",
    "subword_closure_member",
    "kk_extract",
    "level_array",
    "next_level",
    "TraceWriter",
    "parse_algebra",
]
