"""Closed-form Bergman kernels of bounded two-dimensional monomial polyhedra.

The package takes the 2x2 integer matrix whose rows are the exponents of the
two defining monomial inequalities, reduces it exactly, and produces the
kernel as an explicit rational function of t_j = z_j * conj(w_j), together
with two independent numerical oracles that verify the closed form.
"""

from .errors import (
    KernelToolError,
    NoConvergence,
    NotSquareIntegrable,
    ParseError,
    PreconditionViolated,
    SamplingExhausted,
    SingularEvaluation,
    SingularMatrix,
    UnboundedDomain,
)
from .intmat import (
    HermiteDecomposition,
    IntMatrix2,
    check_bounded,
    column_gcds,
    extended_gcd,
    hermite,
    normalize,
    reduced_adjugate,
)
from .kernel import (
    KernelFormula,
    eval_kernel,
    general_kernel,
    hartogs_kernel,
    permanent,
    support_bounds,
    support_index,
    triangle_coeff,
)
from .oracle import (
    DomainSpec,
    PointCheck,
    VerificationReport,
    branch_sum_symmetry_defect,
    hartogs_kernel_by_branches,
    integrability_pairings,
    membership,
    monomial_norm,
    norm_by_quadrature,
    norm_quadrature_levels,
    sample_points,
    series_kernel,
    shadow_boundary_samples,
    transported_kernel,
    verify,
)
from .poly import BiLaurentPoly, squared_geometric_sum

__version__ = "0.1.0"

__all__ = [
    "BiLaurentPoly",
    "DomainSpec",
    "HermiteDecomposition",
    "IntMatrix2",
    "KernelFormula",
    "KernelToolError",
    "NoConvergence",
    "NotSquareIntegrable",
    "ParseError",
    "PointCheck",
    "PreconditionViolated",
    "SamplingExhausted",
    "SingularEvaluation",
    "SingularMatrix",
    "UnboundedDomain",
    "VerificationReport",
    "branch_sum_symmetry_defect",
    "check_bounded",
    "column_gcds",
    "eval_kernel",
    "extended_gcd",
    "general_kernel",
    "hartogs_kernel",
    "hartogs_kernel_by_branches",
    "hermite",
    "integrability_pairings",
    "membership",
    "monomial_norm",
    "norm_by_quadrature",
    "norm_quadrature_levels",
    "normalize",
    "permanent",
    "reduced_adjugate",
    "sample_points",
    "series_kernel",
    "shadow_boundary_samples",
    "support_bounds",
    "support_index",
    "transported_kernel",
    "triangle_coeff",
    "squared_geometric_sum",
    "verify",
]
