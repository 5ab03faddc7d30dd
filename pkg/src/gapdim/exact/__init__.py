"""Exact arithmetic: rationals, polynomials, rational and exponential
functions, and sparse exact linear algebra."""

from fractions import Fraction as Rational

from .expfunc import ExpFunction, make_frequency
from .linalg import (
    Echelon,
    ExactMatrix,
    determinant,
    intersect_subspaces,
    kernel_basis,
    rank,
    solve_in_span,
    span_basis,
    subspace_dim,
)
from .parse import ExpressionError, dumps, loads, parse_expr, parse_rational
from .polynomial import Polynomial, monomials, monomials_upto
from .ratfunc import DenominatorVanishes, RationalFunction, poly_gcd

__all__ = [
    "Rational", "Polynomial", "RationalFunction", "ExpFunction", "ExactMatrix",
    "Echelon", "DenominatorVanishes", "ExpressionError",
    "differentiate", "evaluate", "rank", "kernel_basis", "intersect_subspaces",
    "span_basis", "subspace_dim", "solve_in_span", "determinant",
    "parse_expr", "parse_rational", "dumps", "loads", "make_frequency",
    "monomials", "monomials_upto", "poly_gcd",
]


def differentiate(f, var: str):
    """Exact partial derivative of a Polynomial, RationalFunction or ExpFunction."""
    names = f.variables
    if isinstance(f, ExpFunction):
        pass
    elif var not in names:
        raise KeyError(f"unknown variable {var!r}; function is in {names}")
    return f.diff(var)


def evaluate(f, point):
    """Exact value of a rational function at a point (sequence aligned with
    ``f.variables`` or a name -> value mapping)."""
    if isinstance(f, Polynomial):
        f = RationalFunction.coerce(f)
    return f.evaluate(point)
