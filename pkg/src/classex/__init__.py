"""Generalized exponents of conjugacy classes in small finite groups."""

from .classalg import covering_number, gen_exponent, gen_exponent_group, tuple_count
from .pipeline import analyze, builtin, select

__version__ = "0.1.0"
__all__ = ["analyze", "builtin", "select", "gen_exponent", "gen_exponent_group",
           "covering_number", "tuple_count"]
