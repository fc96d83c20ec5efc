"""hypersym: exact and elliptic hypergeometric transformation identities,
their symmetry groups, and a verifier for both."""

from ._jit import USE_NUMBA
from .brackets import BracketClass, EllipticParams, bracket, bracket_factorial, pochhammer
from .catalog import apply, catalog, lookup, verify
from .groups import Group, double_cosets, generate_group
from .shapes import ParamVector

__version__ = "0.1.0"

__all__ = [
    "USE_NUMBA", "BracketClass", "EllipticParams", "bracket", "bracket_factorial", "pochhammer",
    "apply", "catalog", "lookup", "verify", "Group", "double_cosets", "generate_group", "ParamVector",
]
