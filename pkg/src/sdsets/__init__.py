"""Polynomial-method tools for spherical s-distance sets.

Exact bound tables, canonical reduction modulo the sphere relation
``x1^2 + ... + xn^2 = 1``, point-configuration profiles, linear-independence
certificates and a heuristic search for sum-zero configurations.
"""

from .bounds import BoundsReport, binom, check_identities, compute_bounds, dm_bound, subspace_dimensions
from .sphere_poly import (
    BasisOrder,
    Polynomial,
    canonical_reduce,
    coefficient_vector,
    enumerate_basis,
    evaluate,
    parse_polynomial,
)
from .configurations import (
    InnerProductProfile,
    PointConfiguration,
    known_configuration,
    parse_config,
    profile,
    rational_sphere_point,
)
from .certificate import Certificate, CheckReport, build_certificate, exact_rank, float_rank, verify_certificate
from .extremal_search import SearchResult, refine, search

__all__ = [
    "BasisOrder",
    "BoundsReport",
    "Certificate",
    "CheckReport",
    "InnerProductProfile",
    "PointConfiguration",
    "Polynomial",
    "SearchResult",
    "binom",
    "build_certificate",
    "canonical_reduce",
    "check_identities",
    "coefficient_vector",
    "compute_bounds",
    "dm_bound",
    "enumerate_basis",
    "evaluate",
    "exact_rank",
    "float_rank",
    "known_configuration",
    "parse_config",
    "parse_polynomial",
    "profile",
    "rational_sphere_point",
    "refine",
    "search",
    "subspace_dimensions",
    "verify_certificate",
]
