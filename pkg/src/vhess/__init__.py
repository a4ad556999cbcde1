"""Exact polynomial tools for hypersurfaces with vanishing hessian."""

__version__ = "0.1.0"

from ._accel import BACKEND  # noqa: E402
from .ring import Poly, PolyError, VarSet, divides, euler_check, format_poly, parse  # noqa: E402
from .linalg import (  # noqa: E402
    PolyMatrix,
    adjugate,
    binary_discriminant,
    binary_resultant,
    determinant,
    jacobian,
    pfaffian,
    sylvester_matrix,
)
from .sampling import DEFAULT_PRIME, PRIME_1MOD4, SampleConfig  # noqa: E402
from .hessian import (  # noqa: E402
    HessianProfile,
    IdentityReport,
    generic_rank,
    hess_is_zero,
    hessian_matrix,
    is_cone,
    profile,
    rank_mod_f,
    verify_identity,
    verify_proportionality,
)

__all__ = [
    "__version__", "BACKEND",
    "Poly", "PolyError", "VarSet", "divides", "euler_check", "format_poly", "parse",
    "PolyMatrix", "adjugate", "binary_discriminant", "binary_resultant", "determinant",
    "jacobian", "pfaffian", "sylvester_matrix",
    "DEFAULT_PRIME", "PRIME_1MOD4", "SampleConfig",
    "HessianProfile", "IdentityReport", "generic_rank", "hess_is_zero", "hessian_matrix",
    "is_cone", "profile", "rank_mod_f", "verify_identity", "verify_proportionality",
]
