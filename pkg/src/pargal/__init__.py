"""Partial group actions on split algebras: globalization, quotients, Galois checks and star products."""

from .errors import PargalError
from .group import GroupTable, Subgroup, build_cyclic_product
from .paction import SetPartialAction, validate

__all__ = ["GroupTable", "PargalError", "SetPartialAction", "Subgroup", "build_cyclic_product", "validate"]
__version__ = "0.1.0"
