"""Regularity and regularity defect of powers of m-primary monomial ideals."""

from .defect import (
    DefectReport,
    PurePowerProfile,
    asymptotic_degree,
    defect_sequence,
    mu,
    pure_power_profile,
    reduce_monomial,
    stable_defect,
)
from .monomial import (
    Monomial,
    MonomialIdeal,
    PowerCache,
    boxed_ideal,
    max_ideal_power,
    minimalize,
    order,
    power,
    product,
    sum_ideals,
)
from .parser import ParseError, format_ideal, parse_ideal
from .regularity import regularity, socle_monomials, standard_monomials, witness_set

__version__ = "0.1.0"

__all__ = [
    "DefectReport",
    "Monomial",
    "MonomialIdeal",
    "ParseError",
    "PowerCache",
    "PurePowerProfile",
    "asymptotic_degree",
    "boxed_ideal",
    "defect_sequence",
    "format_ideal",
    "max_ideal_power",
    "minimalize",
    "mu",
    "order",
    "parse_ideal",
    "power",
    "product",
    "pure_power_profile",
    "reduce_monomial",
    "regularity",
    "socle_monomials",
    "stable_defect",
    "standard_monomials",
    "sum_ideals",
    "witness_set",
]
