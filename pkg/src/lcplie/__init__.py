"""Exact-arithmetic analysis of conformal product structures on metric Lie
algebras, with integer lattice tooling for the associated quotients."""

from .connections import (
    Connection,
    CurvatureTensor,
    InnerProduct,
    curvature,
    is_closed,
    is_torsion_free,
    levi_civita,
    torsion,
    weyl_connection,
)
from .lattice import (
    IntegerEndomorphism,
    NonDensityWitness,
    SplitDecomposition,
    SplittingVerdict,
    check_splitting,
    elementary_divisors,
    lattice_index,
    smith_normal_form,
)
from .lcp import (
    ConstraintReport,
    FlatFactorResult,
    LCPStructure,
    LCPTriple,
    LCPValidationError,
    build_from_triple,
    characteristic_constraint_space,
    check_candidate,
    conformal_exponential_residual,
    flat_factor_action,
    is_flat_subspace,
    is_parallel,
    lcp_violations,
    maximal_flat_factor,
    triple_from_lcp,
    validate_lcp,
    verify_conformal_exponential,
)
from .liealg import (
    Covector,
    LieAlgebra,
    bracket_span,
    center,
    check_jacobi,
    derived_algebra,
    derived_series,
    is_abelian,
    is_abelian_subspace,
    is_ideal,
    is_nilpotent,
    is_semisimple,
    is_solvable,
    is_unimodular,
    killing_form,
    lower_central_series,
    radical,
    semidirect_sum,
    trace_form,
)
from .linalg import Matrix, Subspace, Vector, symmetric_signature

__version__ = "0.1.0"

__all__ = [
    "Connection",
    "ConstraintReport",
    "Covector",
    "CurvatureTensor",
    "FlatFactorResult",
    "InnerProduct",
    "IntegerEndomorphism",
    "LCPStructure",
    "LCPTriple",
    "LCPValidationError",
    "LieAlgebra",
    "Matrix",
    "NonDensityWitness",
    "SplitDecomposition",
    "SplittingVerdict",
    "Subspace",
    "Vector",
    "bracket_span",
    "build_from_triple",
    "center",
    "characteristic_constraint_space",
    "check_candidate",
    "check_jacobi",
    "check_splitting",
    "conformal_exponential_residual",
    "curvature",
    "derived_algebra",
    "derived_series",
    "elementary_divisors",
    "flat_factor_action",
    "is_abelian",
    "is_abelian_subspace",
    "is_closed",
    "is_flat_subspace",
    "is_ideal",
    "is_nilpotent",
    "is_parallel",
    "is_semisimple",
    "is_solvable",
    "is_torsion_free",
    "is_unimodular",
    "killing_form",
    "lattice_index",
    "lcp_violations",
    "levi_civita",
    "lower_central_series",
    "maximal_flat_factor",
    "radical",
    "semidirect_sum",
    "smith_normal_form",
    "symmetric_signature",
    "torsion",
    "trace_form",
    "triple_from_lcp",
    "validate_lcp",
    "verify_conformal_exponential",
    "weyl_connection",
]
