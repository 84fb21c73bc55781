"""Number systems of ternary quadratic forms and the rotations they carry.

Turn any non-degenerate ternary quadratic form into a four-dimensional
number system generalizing quaternions and split quaternions, then build
form-preserving rotations by sandwich product, Rodrigues exponential or
Cayley transform.
"""

from ._backend import BACKEND
from .algebra import (
    CausalType,
    PolarCase,
    PolarForm,
    QuadNumber,
    System,
    classify_number,
    classify_vector,
    from_polar,
    polar_decompose,
    vector_product,
)
from .forms import FormClass, QuadraticForm, form_from_json, parse_form
from .oracles import run_property_suite
from .rotations import (
    RotationMatrix3,
    cayley,
    rodrigues,
    sandwich_rotation,
    skew_matrix,
)
from .structure import StructureConstants, derive_constants, multiplication_table

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CausalType",
    "FormClass",
    "PolarCase",
    "PolarForm",
    "QuadNumber",
    "QuadraticForm",
    "RotationMatrix3",
    "StructureConstants",
    "System",
    "cayley",
    "classify_number",
    "classify_vector",
    "derive_constants",
    "form_from_json",
    "from_polar",
    "multiplication_table",
    "parse_form",
    "polar_decompose",
    "rodrigues",
    "run_property_suite",
    "sandwich_rotation",
    "skew_matrix",
    "vector_product",
]
