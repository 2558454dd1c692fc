"""Exact curvature and classification of hypercomplex structures with Hermitian-Norden metrics
on 4-dimensional real Lie algebras."""
from .classify import ClassReport, classification_table, classify_algebra, decompose, subspaces_for
from .curvature import CurvatureBundle, curvature_data, curvature_report, riemann, ricci_and_scalars, sectional
from .exactalg import Poly, RatMatrix, parse_poly, to_rational
from .hnstruct import HNFrame, Plane, plane_type, standard_frame
from .liealg import (
    AlgebraError,
    DomainError,
    JacobiError,
    LieAlgebraSpec,
    catalog_add,
    catalog_get,
    catalog_names,
    jacobi_check,
    load_algebra,
)
from .report import build_report
from .tensorcalc import ComponentTensor, Connection, fundamental_tensor, lee_form, levi_civita, nijenhuis

__version__ = "0.1.0"
