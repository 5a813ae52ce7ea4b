"""Exact mode calculus for the free-field realisation of the Bershadsky-Polyakov algebra."""

from .embedding import (
    CommutationReport,
    EmbeddedModule,
    bp_apply_generator,
    check_commutation,
    gminus_topspace_coeff,
    verify_embedding,
    verify_level,
)
from .lattice import PiKey, PiModule, pi_apply_mode
from .w3 import W3Verma, w3_apply_mode

__all__ = [
    "CommutationReport",
    "EmbeddedModule",
    "PiKey",
    "PiModule",
    "W3Verma",
    "bp_apply_generator",
    "check_commutation",
    "gminus_topspace_coeff",
    "pi_apply_mode",
    "verify_embedding",
    "verify_level",
    "w3_apply_mode",
]
