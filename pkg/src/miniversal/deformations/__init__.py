"""Deformation templates for matrices, pencils and contragredient pencils."""

from .base import ContraStructure, PencilStructure, Template, TemplatePair
from .contragredient import deform_contragredient, triangularize_contragredient, triangularizing_permutations
from .pencil import deform_pencil, deform_pencil_kronecker, kronecker_to_weyr_permutations
from .similarity import deform_jordan, deform_weyr

__all__ = [
    "ContraStructure",
    "PencilStructure",
    "Template",
    "TemplatePair",
    "deform_contragredient",
    "deform_jordan",
    "deform_pencil",
    "deform_pencil_kronecker",
    "deform_weyr",
    "kronecker_to_weyr_permutations",
    "triangularize_contragredient",
    "triangularizing_permutations",
]
