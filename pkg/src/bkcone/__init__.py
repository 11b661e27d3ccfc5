"""Eigencones, deformed cup products on flag varieties and saturation experiments."""
from .bkprod import (bk0_product, deformed_product, is_levi_movable, kostant_product_borel,
                     levi_factorization_check)
from .eigencone import InequalitySystem, generate, irredundancy_check
from .errors import BkconeError, ConfigurationError, InvariantViolation, PreconditionError
from .rootsys import RootSystem, build_root_system, k_g
from .schubert import SchubertRing, schubert_ring
from .tensor import invariant_dim, saturation_factor_probe, tensor_decompose, weyl_dim
from .typea import hermitian_membership, horn_set, lr_coefficient
from .weyl import Parabolic, WeylGroup, maximal_parabolic, weyl_group

__version__ = "0.1.0"

__all__ = [
    "BkconeError", "ConfigurationError", "InequalitySystem", "InvariantViolation", "Parabolic",
    "PreconditionError", "RootSystem", "SchubertRing", "WeylGroup", "bk0_product", "build_root_system",
    "deformed_product", "generate", "hermitian_membership", "horn_set", "invariant_dim",
    "irredundancy_check", "is_levi_movable", "k_g", "kostant_product_borel", "levi_factorization_check",
    "lr_coefficient", "maximal_parabolic", "saturation_factor_probe", "schubert_ring",
    "tensor_decompose", "weyl_dim", "weyl_group",
]
