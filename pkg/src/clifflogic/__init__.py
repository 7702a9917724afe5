"""Clifford algebra engine: binor logic, the iterated Clifford hierarchy and a
finite Dirac toy model with exactly computable spectra."""

__version__ = "0.1.0"

from .algebra import (  # noqa: E402
    FourGroup,
    Multivector,
    Ring,
    Signature,
    blade_mul,
    gp,
    grade_project,
    involution,
    linear_combine,
    norm_form,
    scalar_part,
)
from .errors import (  # noqa: E402
    BoundExceededError,
    CliffordError,
    ConfigurationError,
    DomainError,
    ParseError,
    RingMismatchError,
    UnsupportedRingError,
)
from .expr import parse_expression, print_expression  # noqa: E402

__all__ = [
    "BoundExceededError",
    "CliffordError",
    "ConfigurationError",
    "DomainError",
    "FourGroup",
    "Multivector",
    "ParseError",
    "Ring",
    "RingMismatchError",
    "Signature",
    "UnsupportedRingError",
    "blade_mul",
    "gp",
    "grade_project",
    "involution",
    "linear_combine",
    "norm_form",
    "parse_expression",
    "print_expression",
    "scalar_part",
]
