"""Exact arithmetic over Q, Q(sqrt d) and F_p, and ramification checks."""

from .belyi import (
    DegreeOutOfRange,
    HyperellipticModel,
    Inseparable,
    MultPattern,
    NotSquarefree,
    Report,
    ZeroInput,
    hyperelliptic_model,
    mult_pattern,
    normalized_discriminant,
    squarefree_part,
    verify_belyi,
    verify_certificate,
)
from .gfp import BadPrime, factor_degrees, factor_mod_p
from .poly import MixedFieldError, Poly, QuadElem, squarefree_decomposition

__all__ = [
    "BadPrime",
    "DegreeOutOfRange",
    "HyperellipticModel",
    "Inseparable",
    "MixedFieldError",
    "MultPattern",
    "NotSquarefree",
    "Poly",
    "QuadElem",
    "Report",
    "ZeroInput",
    "factor_degrees",
    "factor_mod_p",
    "hyperelliptic_model",
    "mult_pattern",
    "normalized_discriminant",
    "squarefree_decomposition",
    "squarefree_part",
    "verify_belyi",
    "verify_certificate",
]
