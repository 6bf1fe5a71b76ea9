"""Finite-dimensional algebras over finite fields: idempotents, nilradicals, blocks."""
from .gfield import FieldElement, FiniteField, ff_make, frobenius
from .polyfactor import FactorList, Polynomial, factor, is_irreducible
from .algebra import (
    Algebra,
    AlgebraElement,
    Augmentation,
    CayleyTable,
    alg_cyclic_group_algebra,
    alg_direct_product,
    alg_group_algebra,
    alg_matrix,
    alg_poly_quotient,
    alg_scalar_extend,
    alg_tensor,
    idempotent_power,
)
from .decomp import Certification, Status, block_decompose, is_connected, primitive_idempotents

__version__ = "0.1.0"
