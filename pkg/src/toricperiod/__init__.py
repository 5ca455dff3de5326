"""Exact toric periods on unramified GL(2) principal-series families.

The package computes the toric period functional on algebraic families of
principal-series vectors over a p-adic field, entirely in exact arithmetic,
and certifies that its image is the stated non-principal ideal of the
coefficient ring.  See README.md for the tour.
"""

from .family import (
    PHI_W,
    SPH,
    ClassCoverageError,
    IwahoriPhiW,
    LinComb,
    ParseError,
    Spherical,
    TableVector,
    Translate,
    big_cell_split,
    chi_delta_value,
    evaluate,
    f0_table,
    invariance_level,
    random_table,
    sph_table,
    tabulate,
    vector_from_json,
    vector_prime,
    vector_to_json,
)
from .groebner import (
    Certificate,
    CertificateError,
    MembershipSolver,
    bivariate_gcd,
    laurent_membership,
)
from .laurent import (
    LaurentFraction,
    LaurentPoly,
    NotDivisible,
    NotInvertible,
    TailViolation,
    ZPoly,
)
from .localfield import (
    ConductorExceeded,
    IwasawaFactors,
    Mat2,
    P1Class,
    additive_haar_integral,
    coset_reps,
    diag,
    iwasawa_decompose,
    p1_class_of,
    p1_enumerate,
    psi_eval,
    shell_character_integral,
    unipotent,
    unit_reps,
    valuation,
    weyl,
)
from .period import (
    PeriodReport,
    cleared_window,
    image_ideal,
    image_ideal_alt,
    spherical_ratio,
    toric_period,
    verify_image,
    zeta_window,
)
from .scalars import (
    Cyclotomic,
    FieldMismatch,
    NotRational,
    QCyclotomic,
    QNumeric,
    QSymbolic,
    RationalFunction,
)
from .whittaker import (
    cs_factor_regularized,
    lambda_chi,
    projected_sph,
    shintani_sph,
    sph_big_cell_value,
    whittaker_coefficient,
)

__version__ = "0.1.0"

__all__ = [
    "PHI_W",
    "SPH",
    "Certificate",
    "CertificateError",
    "ClassCoverageError",
    "ConductorExceeded",
    "Cyclotomic",
    "FieldMismatch",
    "IwahoriPhiW",
    "IwasawaFactors",
    "LaurentFraction",
    "LaurentPoly",
    "LinComb",
    "Mat2",
    "MembershipSolver",
    "NotDivisible",
    "NotInvertible",
    "NotRational",
    "P1Class",
    "ParseError",
    "PeriodReport",
    "QCyclotomic",
    "QNumeric",
    "QSymbolic",
    "RationalFunction",
    "Spherical",
    "TableVector",
    "TailViolation",
    "Translate",
    "ZPoly",
    "additive_haar_integral",
    "big_cell_split",
    "bivariate_gcd",
    "chi_delta_value",
    "cleared_window",
    "coset_reps",
    "cs_factor_regularized",
    "diag",
    "evaluate",
    "f0_table",
    "image_ideal",
    "image_ideal_alt",
    "invariance_level",
    "iwasawa_decompose",
    "lambda_chi",
    "laurent_membership",
    "p1_class_of",
    "p1_enumerate",
    "projected_sph",
    "psi_eval",
    "random_table",
    "shell_character_integral",
    "shintani_sph",
    "sph_big_cell_value",
    "sph_table",
    "spherical_ratio",
    "tabulate",
    "toric_period",
    "unipotent",
    "unit_reps",
    "valuation",
    "vector_from_json",
    "vector_prime",
    "vector_to_json",
    "verify_image",
    "weyl",
    "whittaker_coefficient",
    "zeta_window",
]
