"""Line bundles on K3 surfaces from Picard lattice data.

Cohomology of line bundles, ampleness tests, and ACM / initialized /
Ulrich classification with respect to a very ample polarization.
"""

from .acm import (
    ClassificationRecord,
    ThmCase,
    acm_scan_length,
    classify,
    classify_thm12,
    h1_profile,
    is_acm,
    is_initialized,
    is_ulrich,
)
from .cohomology import (
    CohomologyVector,
    EllipticDecomposition,
    NegTwoCache,
    ReductionResult,
    cohomology_dims,
    elliptic_decomposition,
    irreducible_neg_two,
    is_base_point_free,
    is_effective,
    is_nef,
    neg_two_classes,
    reduce_to_nef,
)
from .harness import cross_validate, enumerate_acm, scan_families, verify_prop41
from .lattice import (
    DivisorClass,
    PicardLattice,
    chi,
    enumerate_by_degree,
    make_lattice,
    pair,
    primitive_part,
    rank2_family,
)
from .polarization import Polarization, genus, is_ample, is_very_ample

__all__ = [
    "ClassificationRecord",
    "CohomologyVector",
    "DivisorClass",
    "EllipticDecomposition",
    "NegTwoCache",
    "PicardLattice",
    "Polarization",
    "ReductionResult",
    "ThmCase",
    "acm_scan_length",
    "chi",
    "classify",
    "classify_thm12",
    "cohomology_dims",
    "cross_validate",
    "elliptic_decomposition",
    "enumerate_acm",
    "enumerate_by_degree",
    "genus",
    "h1_profile",
    "irreducible_neg_two",
    "is_acm",
    "is_ample",
    "is_base_point_free",
    "is_effective",
    "is_initialized",
    "is_nef",
    "is_ulrich",
    "is_very_ample",
    "make_lattice",
    "neg_two_classes",
    "pair",
    "primitive_part",
    "rank2_family",
    "reduce_to_nef",
    "scan_families",
    "verify_prop41",
]

__version__ = "0.1.0"
