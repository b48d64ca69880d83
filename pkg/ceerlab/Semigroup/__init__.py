from .strata import (
    avoiding_count,
    avoiding_rank,
    avoiding_unrank,
    avoiding_words,
    classify,
    coding_occurrences,
    coding_word,
)
from .closure import congruence_closure, related_exponents
from .decide import fincl_class_size, fincl_decide, sr_decide, sr_from_join, sr_to_join, sz_decide

__all__ = [
    "avoiding_count",
    "avoiding_rank",
    "avoiding_unrank",
    "avoiding_words",
    "classify",
    "coding_occurrences",
    "coding_word",
    "congruence_closure",
    "related_exponents",
    "fincl_class_size",
    "fincl_decide",
    "sr_decide",
    "sr_from_join",
    "sr_to_join",
    "sz_decide",
]
