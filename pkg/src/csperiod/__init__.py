"""High-precision checks of linear relations among Chowla-Selberg periods, π and 3F2 values."""

from .precision import PrecisionContext, PrecisionError, Real
from .numtheory import class_number, kronecker, validate_discriminant
from .periods import omega, span_values
from .identities import catalog, get_case, probe_linear_forms, verify_identity
from .relations import find_relation, lll_reduce

__all__ = [
    "PrecisionContext", "PrecisionError", "Real",
    "class_number", "kronecker", "validate_discriminant",
    "omega", "span_values",
    "catalog", "get_case", "probe_linear_forms", "verify_identity",
    "find_relation", "lll_reduce",
]
