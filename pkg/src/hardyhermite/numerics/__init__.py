from hardyhermite.numerics.quadrature import (
    QuadratureRule,
    default_rule_order,
    gauss_hermite_rule,
    gauss_legendre_rule,
    integrate_weighted,
    legendre_on,
)
from hardyhermite.numerics.scaled import ScaledArray, ScaledComplex, rel_diff, sc_add, sc_mul, sc_sum

__all__ = [
    "QuadratureRule",
    "ScaledArray",
    "ScaledComplex",
    "default_rule_order",
    "gauss_hermite_rule",
    "gauss_legendre_rule",
    "integrate_weighted",
    "legendre_on",
    "rel_diff",
    "sc_add",
    "sc_mul",
    "sc_sum",
]
