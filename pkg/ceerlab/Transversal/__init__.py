from .principal import (
    cylinder_principal_law,
    is_transversal_at,
    principal_at,
    principal_function_at,
    random_certified_sample,
)
from .immunity import (
    array_intersection_check,
    domination_check,
    majorization_check,
    majorizer_check,
    majorizes,
)

__all__ = [
    "cylinder_principal_law",
    "is_transversal_at",
    "principal_at",
    "principal_function_at",
    "random_certified_sample",
    "array_intersection_check",
    "domination_check",
    "majorization_check",
    "majorizer_check",
    "majorizes",
]
