"""Lagrange interpolation on simplices and its sharp error constants.

The library provides lattice interpolation on triangles and tetrahedra,
the difference-quotient calculus on lattice nodes with its box-integral
representation, weighted Sobolev seminorms, and numerical lower bounds for
the interpolation and box-constrained Poincare constants, including the
squeeze and circumradius scaling studies exposed through the CLI.
"""

from .constants import (
    MAX_PROBE_DEGREE,
    ConstantEstimate,
    ProbeFamily,
    ScalingStudy,
    ScalingStudyRow,
    SqueezeStudy,
    SqueezeStudyRow,
    circumradius_scaling_study,
    estimate_error_constant_rayleigh,
    estimate_error_constant_sampling,
    estimate_poincare_constant,
    loglog_slope,
    scaling_probe_family,
    scaling_triangle_family,
    squeeze_boundedness_study,
)
from .diffquot import (
    Box,
    annihilation_check,
    annihilation_residuals,
    box_integral,
    box_integrals_for_extent,
    box_moment_matrix,
    diff_quotient,
    diff_quotient_recursive,
    enumerate_boxes,
    integral_representation_check,
)
from .eigen import cyclic_jacobi_eigh, generalized_eigh_max, sigma_min_one_sided_jacobi
from .errors import (
    IllConditionedElementError,
    InsufficientProbeSpaceError,
    NumericalFailureError,
    OutOfLatticeError,
    SimplexInterpError,
    SingularGeometryError,
)
from .geometry import (
    GeometryReport,
    Simplex,
    barycentric,
    geometry_report,
    jamet_angle,
    lattice_nodes,
    lattice_points,
    random_simplex,
    reference_simplex,
    refine_simplex,
    squeeze,
)
from .multiindex import (
    MultiIndex,
    enumerate_order,
    enumerate_upto,
    multinomial_weight,
    split_identity_check,
    submultiindices,
    unit_index,
    zero_index,
)
from .polynomials import (
    LagrangeBasis,
    Polynomial,
    cached_basis,
    evaluate_polynomials,
    interpolate,
    lagrange_basis,
    n_coefficients,
)
from .quadrature import (
    INF_LATTICE_ORDER,
    MAX_EXACTNESS,
    QuadratureRule,
    SeminormSpec,
    box_constraint_p_valid,
    integrate,
    interpolation_p_valid,
    lp_norm,
    lp_norm_detailed,
    map_rule,
    reference_moment,
    seminorm,
    seminorm_decomposition_gap,
    simplex_rule,
    squeeze_bound_p_valid,
    squeeze_seminorm_identity_check,
)

__version__ = "0.1.0"

__all__ = [
    "Box",
    "ConstantEstimate",
    "GeometryReport",
    "INF_LATTICE_ORDER",
    "IllConditionedElementError",
    "InsufficientProbeSpaceError",
    "LagrangeBasis",
    "MAX_EXACTNESS",
    "MAX_PROBE_DEGREE",
    "MultiIndex",
    "NumericalFailureError",
    "OutOfLatticeError",
    "Polynomial",
    "ProbeFamily",
    "QuadratureRule",
    "ScalingStudy",
    "ScalingStudyRow",
    "SeminormSpec",
    "SimplexInterpError",
    "Simplex",
    "SingularGeometryError",
    "SqueezeStudy",
    "SqueezeStudyRow",
    "annihilation_check",
    "annihilation_residuals",
    "barycentric",
    "box_constraint_p_valid",
    "box_integral",
    "box_integrals_for_extent",
    "box_moment_matrix",
    "cached_basis",
    "circumradius_scaling_study",
    "cyclic_jacobi_eigh",
    "diff_quotient",
    "diff_quotient_recursive",
    "enumerate_boxes",
    "enumerate_order",
    "enumerate_upto",
    "estimate_error_constant_rayleigh",
    "estimate_error_constant_sampling",
    "estimate_poincare_constant",
    "evaluate_polynomials",
    "generalized_eigh_max",
    "geometry_report",
    "integral_representation_check",
    "integrate",
    "interpolate",
    "interpolation_p_valid",
    "jamet_angle",
    "lagrange_basis",
    "lattice_nodes",
    "lattice_points",
    "loglog_slope",
    "lp_norm",
    "lp_norm_detailed",
    "map_rule",
    "multinomial_weight",
    "n_coefficients",
    "random_simplex",
    "reference_moment",
    "reference_simplex",
    "refine_simplex",
    "scaling_probe_family",
    "scaling_triangle_family",
    "seminorm",
    "seminorm_decomposition_gap",
    "sigma_min_one_sided_jacobi",
    "simplex_rule",
    "split_identity_check",
    "squeeze",
    "squeeze_bound_p_valid",
    "squeeze_boundedness_study",
    "squeeze_seminorm_identity_check",
    "submultiindices",
    "unit_index",
    "zero_index",
]
