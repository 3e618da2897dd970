"""Riccati foliations on fibered complex surfaces and their holonomy.

Modules
-------
matrix_core
    Characteristic polynomials, Jordan forms, matrix exponential, projective fits.
aut_classify
    Classification of projective automorphisms of the plane and their fixed sets.
poly_vf
    Sparse polynomials, polynomial vector fields and chart changes.
normal_form
    Riccati normal-form checkers, invariant fibers and transversality.
holonomy
    Local models, numeric lifting of loops, holonomy generators and synthesis.
cli
    The ``riccati-fol`` command.
"""

from .aut_classify import AutClassification, FixedLocus, classify, fixed_locus
from .matrix_core import (
    ProjMap,
    alpha_from_lambda,
    apply,
    char_poly,
    eigen_structure,
    fit_projective,
    jordan_form,
    mat_exp,
)
from .normal_form import (
    check_riccati_cn,
    check_riccati_cp2,
    corollary_check,
    invariant_fibers,
    transversality_at,
)
from .poly_vf import (
    MultiPoly,
    PolyVectorField,
    base_chart,
    fiber_chart_cp2,
    fiber_chart_cp2_second,
    polydisk_chart_cn,
)

__version__ = "0.1.0"

__all__ = [
    "AutClassification", "FixedLocus", "MultiPoly", "PolyVectorField", "ProjMap",
    "alpha_from_lambda", "apply", "base_chart", "char_poly", "check_riccati_cn",
    "check_riccati_cp2", "classify", "corollary_check", "eigen_structure",
    "fiber_chart_cp2", "fiber_chart_cp2_second", "fit_projective", "fixed_locus",
    "invariant_fibers", "jordan_form", "mat_exp", "polydisk_chart_cn",
    "transversality_at",
]
