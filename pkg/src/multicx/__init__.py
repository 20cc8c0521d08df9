"""Exact-arithmetic toolkit for multicomplexes and their spectral sequences."""

from .fields import GF2, GF7, QQ, PrimeField, RationalField, field_from_name
from .graded import INF, Window
from .multicomplex import (MCMorphism, Multicomplex, direct_sum, pushout,
                           tensor_product, validate_morphism,
                           validate_multicomplex)

__all__ = [
    "GF2", "GF7", "QQ", "PrimeField", "RationalField", "field_from_name",
    "INF", "Window",
    "MCMorphism", "Multicomplex", "direct_sum", "pushout", "tensor_product",
    "validate_morphism", "validate_multicomplex",
]
