"""Rational functions over Q in finitely many variables.

Denominators are kept monic in grlex order.  Full multivariate gcd
cancellation runs after every operation while the denominator degree stays
below ``GCD_DEGREE_CAP``; beyond that only the monic/content normalisation
is applied.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyRing

from .polynomial import Polynomial, as_fraction

GCD_DEGREE_CAP = 20


class DenominatorVanishes(ZeroDivisionError):
    """Raised when a rational function is evaluated at a pole."""

    def __init__(self, point):
        super().__init__(f"denominator vanishes at {point}")
        self.point = point


@lru_cache(maxsize=256)
def _ring(variables):
    return PolyRing(variables, QQ, grlex)


def _to_sympy(p: Polynomial, ring):
    return ring.from_dict({e: QQ(c.numerator, c.denominator) for e, c in p.terms.items()})


def _from_sympy(element, variables) -> Polynomial:
    return Polynomial._raw(
        variables,
        {tuple(e): Fraction(int(c.numerator), int(c.denominator)) for e, c in element.items()},
    )


def poly_cofactors(a: Polynomial, b: Polynomial):
    """Return (g, a/g, b/g) for g = gcd(a, b)."""
    variables, _, _ = a._align(b)
    a = a.with_variables(variables)
    b = b.with_variables(variables)
    if not variables:
        return Polynomial.constant(1), a, b
    ring = _ring(variables)
    g, ca, cb = _to_sympy(a, ring).cofactors(_to_sympy(b, ring))
    return _from_sympy(g, variables), _from_sympy(ca, variables), _from_sympy(cb, variables)


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    return poly_cofactors(a, b)[0]


class RationalFunction:
    """Quotient of two polynomials, normalised on construction."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, reduce: bool = True):
        if not isinstance(num, Polynomial):
            num = Polynomial.constant(as_fraction(num))
        if den is None:
            den = Polynomial.constant(1, num.variables)
        elif not isinstance(den, Polynomial):
            den = Polynomial.constant(as_fraction(den), num.variables)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        variables, _, _ = num._align(den)
        num = num.with_variables(variables)
        den = den.with_variables(variables)
        if num.is_zero():
            den = Polynomial.constant(1, variables)
        elif den.is_constant():
            c = den.constant_value()
            if c != 1:
                num = num * (1 / c)
                den = Polynomial.constant(1, variables)
        else:
            if reduce and den.total_degree() <= GCD_DEGREE_CAP:
                g, num, den = poly_cofactors(num, den)
            lc = den.leading_coefficient()
            if lc != 1:
                num = num * (1 / lc)
                den = den * (1 / lc)
        self.num = num
        self.den = den

    @classmethod
    def _raw(cls, num, den):
        r = object.__new__(cls)
        r.num = num
        r.den = den
        return r

    @classmethod
    def var(cls, name: str, variables: Sequence[str] | None = None) -> "RationalFunction":
        p = Polynomial.var(name, variables)
        return cls._raw(p, Polynomial.constant(1, p.variables))

    @classmethod
    def constant(cls, c, variables: Sequence[str] = ()) -> "RationalFunction":
        p = Polynomial.constant(c, variables)
        return cls._raw(p, Polynomial.constant(1, p.variables))

    @classmethod
    def coerce(cls, value) -> "RationalFunction":
        if isinstance(value, RationalFunction):
            return value
        if isinstance(value, Polynomial):
            return cls._raw(value, Polynomial.constant(1, value.variables))
        return cls.constant(as_fraction(value))

    @property
    def variables(self):
        return self.num.variables

    # -- predicates ---------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num.constant_value() / self.den.constant_value()

    # -- arithmetic ---------------------------------------------------
    def _other(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (int, Fraction, Polynomial)):
            return RationalFunction.coerce(other)
        return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        if other.den.is_constant():
            return RationalFunction(self.num + other.num * self.den, self.den, reduce=False)
        if self.den.is_constant():
            return RationalFunction(self.num * other.den + other.num, other.den, reduce=False)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._raw(-self.num, self.den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return RationalFunction.constant(0, self.variables)
            return RationalFunction._raw(self.num * other, self.den)
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return RationalFunction.constant(0)
        if self.den.is_constant() and other.den.is_constant():
            return RationalFunction._raw(*_aligned(self.num * other.num, self.den))
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return RationalFunction._raw(self.num * (1 / Fraction(other)), self.den)
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        if other.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise ValueError("only integer powers of rational functions are supported")
        if k < 0:
            return RationalFunction(self.den ** (-k), self.num ** (-k), reduce=False)
        return RationalFunction(self.num ** k, self.den ** k, reduce=False)

    # -- comparison ---------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Polynomial)):
            other = RationalFunction.coerce(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        if self.den == other.den:
            return self.num == other.num
        return (self.num * other.den) == (other.num * self.den)

    def __hash__(self):
        return hash((self.num, self.den))

    # -- calculus -----------------------------------------------------
    def diff(self, var: str) -> "RationalFunction":
        if var not in self.variables:
            return RationalFunction.constant(0, self.variables)
        dn = self.num.diff(var)
        if self.den.is_constant():
            return RationalFunction._raw(dn, self.den)
        dd = self.den.diff(var)
        return RationalFunction(dn * self.den - self.num * dd, self.den * self.den)

    def evaluate(self, point) -> Fraction:
        if isinstance(point, Mapping):
            d = self.den.evaluate(point)
            if not d:
                raise DenominatorVanishes(dict(point))
            return self.num.evaluate(point) / d
        d = self.den.evaluate(point)
        if not d:
            raise DenominatorVanishes(tuple(point))
        return self.num.evaluate(point) / d

    def substitute(self, values: Mapping[str, object]) -> "RationalFunction":
        """Substitute constants, polynomials or rational functions."""
        poly_values = {}
        rf_values = {}
        for k, v in values.items():
            if isinstance(v, RationalFunction):
                if v.is_polynomial():
                    poly_values[k] = v.num * (1 / v.den.constant_value())
                else:
                    rf_values[k] = v
            else:
                poly_values[k] = v
        num = self.num.substitute(poly_values) if poly_values else self.num
        den = self.den.substitute(poly_values) if poly_values else self.den
        if rf_values:
            return _rf_substitute(num, rf_values) / _rf_substitute(den, rf_values)
        if den.is_zero():
            raise DenominatorVanishes(dict(values))
        return RationalFunction(num, den)

    def with_variables(self, variables) -> "RationalFunction":
        return RationalFunction._raw(self.num.with_variables(variables), self.den.with_variables(variables))

    # -- printing -----------------------------------------------------
    def __str__(self):
        if self.den.is_constant():
            return str(self.num)
        num = str(self.num)
        if len(self.num.terms) > 1:
            num = f"({num})"
        return f"{num}/({self.den})"

    def __repr__(self):
        return f"RationalFunction({str(self)!r})"


def _aligned(num: Polynomial, den: Polynomial):
    variables, _, _ = num._align(den)
    return num.with_variables(variables), den.with_variables(variables)


def _rf_substitute(p: Polynomial, values) -> RationalFunction:
    total = RationalFunction.constant(0)
    for e, c in p.terms.items():
        term = RationalFunction.constant(c)
        for v, k in zip(p.variables, e):
            if k:
                base = values.get(v)
                if base is None:
                    base = RationalFunction.var(v)
                term = term * base ** k
        total = total + term
    return total


def to_rational_function(value) -> RationalFunction:
    return RationalFunction.coerce(value)
