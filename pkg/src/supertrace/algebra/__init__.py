"""Finite fields, polynomials, quotient rings and factorization."""

from .fields import (
    ExtensionField,
    Field,
    FieldElement,
    Fp2,
    PrimeField,
    QuadraticExtension,
    field_from_tower,
    fp2,
    tower_moduli,
)
from .poly import Poly, gcd, invmod, mulmod, powmod, xgcd
from .residue import ResidueRing

__all__ = [
    "ExtensionField",
    "Field",
    "FieldElement",
    "Fp2",
    "PrimeField",
    "QuadraticExtension",
    "Poly",
    "ResidueRing",
    "field_from_tower",
    "fp2",
    "gcd",
    "invmod",
    "mulmod",
    "powmod",
    "tower_moduli",
    "xgcd",
]
