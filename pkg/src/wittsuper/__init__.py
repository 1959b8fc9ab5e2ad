"""Exact computations with the Lie superalgebra W(m,n) of vector fields on C^{m|n}
and its tensor modules."""

from .core import VectorField, basis_fields, bracket_w
from .descriptors import ModuleDescriptor, parse_descriptor
from .errors import WittError

__version__ = "0.1.0"

__all__ = ["ModuleDescriptor", "VectorField", "WittError", "basis_fields", "bracket_w", "parse_descriptor"]
