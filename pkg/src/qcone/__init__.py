"""GF(2) homological algebra toolkit for CSS codes built as mapping cones.

Modules:
    f2linalg       bit-packed linear algebra over GF(2)
    chain          based chain complexes, homology, tensor/sum, weights
    cone           multi-level mapping cones and the embedding isomorphism
    css            the CSS-code view with exhaustive distance oracles
    constructions  every named construction, with self-verification
    cli            command-line surface (build / verify / params / ...)
"""

from .chain import (BasedComplex, HomologyData, WeightReport, direct_sum,
                    homology, homology_dim, kunneth_check,
                    project_to_homology, supports, tensor, transpose_complex,
                    validate, weights)
from .cone import (ConeLevel, ConeSpec, assemble, check_regular,
                   embedded_complex, embedded_data, embedding_iso, lift_class)
from .css import CssCode, CssParams, css_from_parity_checks
from .f2linalg import (BitMatrix, LinearSolver, QuotientBasis, kernel_basis,
                       multiply, quotient_basis, rank, solve, transpose)

__all__ = [
    "BasedComplex", "BitMatrix", "ConeLevel", "ConeSpec", "CssCode",
    "CssParams", "HomologyData", "LinearSolver", "QuotientBasis",
    "WeightReport", "assemble", "check_regular", "css_from_parity_checks",
    "direct_sum", "embedded_complex", "embedded_data", "embedding_iso",
    "homology", "homology_dim", "kernel_basis", "kunneth_check",
    "lift_class", "multiply", "project_to_homology", "quotient_basis",
    "rank", "solve", "supports", "tensor", "transpose",
    "transpose_complex", "validate", "weights",
]
