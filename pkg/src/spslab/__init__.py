"""Finite state property systems: closures, geometry, orthostructure and model search."""

__version__ = "0.1.0"

from .system import InvalidSystemError, StatePropertySystem, StructureError, validate
from .verdict import AxiomReport, Verdict

__all__ = ["StatePropertySystem", "StructureError", "InvalidSystemError", "validate", "AxiomReport", "Verdict", "__version__"]
