"""Smooth fans coarsening the braid arrangement fan, and their factorization
into star subdivisions down to the braid fan."""

from .errors import BraidFanError, InternalVerificationFailure
from .factorize import (
    FactorizationTrace,
    SubdivisionCenter,
    factor_to_braid,
    find_center,
    strong_factorize,
    subdivide_at_center,
)
from .fan import (
    Cone,
    Fan,
    braid_fan,
    cones_containing,
    is_complete_coarsening,
    is_smooth,
    preposet_of_rays,
    rays_of,
    star_subdivide_rays,
)
from .lattice import LatticeVector, canonicalize, indicator, is_unimodular_extendable, sum_vectors
from .oracle import ValidationReport, enumerate_coarsenings, intersection_preposet, validate_fan, verify_step
from .preposet import Preposet, from_relations

__version__ = "0.1.0"
