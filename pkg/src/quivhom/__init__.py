"""Exact computations with cotorsion pairs in categories of quiver representations.

Modules over a finite-dimensional F_p-algebra are stacks of action
matrices; representations attach a module to each vertex and a module map
to each arrow.  Everything is computed exactly with numpy integer arrays.
"""

from __future__ import annotations

from .algebra import Algebra, dual_numbers, field_algebra, path_algebra_a2, truncated_polynomial
from .errors import (
    ConstructionError,
    InvariantViolation,
    OracleViolation,
    ParseError,
    QuivhomError,
)
from .ext import ext1, ext1_dim
from .linalg import PrimeField
from .modules import Module, ModuleMorphism, ShortExactSequence, module_from_matrices, regular_module
from .quiver import Quiver, kronecker_quiver, linear_quiver, loop_quiver
from .rep_ext import rep_ext1, rep_ext1_dim
from .reps import RepMorphism, RepSES, Representation, cofree_at, free_at, stalk

__version__ = "0.1.0"

__all__ = [
    "Algebra", "ConstructionError", "InvariantViolation", "Module", "ModuleMorphism", "OracleViolation",
    "ParseError", "PrimeField", "QuivhomError", "Quiver", "RepMorphism", "RepSES", "Representation",
    "ShortExactSequence", "cofree_at", "dual_numbers", "ext1", "ext1_dim", "field_algebra", "free_at",
    "kronecker_quiver", "linear_quiver", "loop_quiver", "module_from_matrices", "path_algebra_a2",
    "rep_ext1", "rep_ext1_dim", "regular_module", "stalk", "truncated_polynomial",
]
