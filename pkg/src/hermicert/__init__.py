"""Exact rational Hermite matrices from approximate roots.

Reconstructs the rational Hermite matrix of a zero-dimensional polynomial
ideal from floating-point root approximations, certifies it symbolically
through multiplication-matrix checks, and turns certified signatures into
rational certificates: real-root counts, real roots inside a ball, and
non-negativity of a polynomial over a real variety.
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .certificates import (
    BallQuery,
    NonnegQuery,
    ball_polynomial,
    bezout_bound,
    certify_ball,
    certify_nonneg,
    lagrange_system,
    real_root_count,
)
from .certify import (
    CertificationOutcome,
    certify_nonradical,
    certify_pipeline,
    certify_univariate_fastpath,
    signature,
)
from .hermite import (
    HermitePlus,
    approx_extended_hermite,
    build_extended_hermite,
    build_nonradical,
    reconstruct_hermite,
)
from .linalg import (
    Inertia,
    RatMatrix,
    char_poly,
    inertia_ldl,
    inverse,
    max_nonsingular_connected_submatrix,
    rank,
    signature_descartes,
)
from .numroots import (
    ApproxRootSet,
    FloatMatrix,
    match_and_filter,
    newton_refine,
    random_square_combination,
    select_basis,
    smallest_singular_value,
    vandermonde,
)
from .polynomials import (
    ExtendedBasis,
    MonomialBasis,
    MultiPoly,
    PolySystem,
    newton_girard_power_sums,
    parse_poly,
    sign_variations,
    univ_gcd,
)
from .ratrecon import convergents, denominator_bound, rational_reconstruct

__version__ = "0.1.0"

__all__ = [
    "ApproxRootSet",
    "BallQuery",
    "CertificationOutcome",
    "ExtendedBasis",
    "FloatMatrix",
    "HermitePlus",
    "Inertia",
    "KERNEL_BACKEND",
    "MonomialBasis",
    "MultiPoly",
    "NonnegQuery",
    "PolySystem",
    "RatMatrix",
    "approx_extended_hermite",
    "ball_polynomial",
    "bezout_bound",
    "build_extended_hermite",
    "build_nonradical",
    "certify_ball",
    "certify_nonneg",
    "certify_nonradical",
    "certify_pipeline",
    "certify_univariate_fastpath",
    "char_poly",
    "convergents",
    "denominator_bound",
    "inertia_ldl",
    "inverse",
    "lagrange_system",
    "match_and_filter",
    "max_nonsingular_connected_submatrix",
    "newton_girard_power_sums",
    "newton_refine",
    "parse_poly",
    "random_square_combination",
    "rank",
    "rational_reconstruct",
    "real_root_count",
    "reconstruct_hermite",
    "select_basis",
    "sign_variations",
    "signature",
    "signature_descartes",
    "smallest_singular_value",
    "univ_gcd",
    "vandermonde",
    "__version__",
]
