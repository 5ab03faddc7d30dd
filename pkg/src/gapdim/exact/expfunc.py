"""Exponential-polynomial functions sum_l c_l(x) * exp(l . x).

Frequencies are stored as sorted tuples of ``(variable, Fraction)`` pairs with
nonzero rationals; the empty tuple is the purely rational part.  Distinct
exponentials are linearly independent over rational functions, so a value is
zero exactly when every frequency component is zero.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Mapping, Tuple

from .polynomial import Polynomial, as_fraction
from .ratfunc import RationalFunction

Frequency = Tuple[Tuple[str, Fraction], ...]
ZERO_FREQUENCY: Frequency = ()


def make_frequency(mapping: Mapping[str, object]) -> Frequency:
    return tuple(sorted((v, as_fraction(c)) for v, c in mapping.items() if as_fraction(c)))


def add_frequencies(a: Frequency, b: Frequency) -> Frequency:
    out = dict(a)
    for v, c in b:
        out[v] = out.get(v, 0) + c
    return make_frequency(out)


class ExpFunction:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Frequency, object] | None = None):
        clean: Dict[Frequency, RationalFunction] = {}
        for freq, c in (terms or {}).items():
            c = RationalFunction.coerce(c)
            if c:
                clean[tuple(freq)] = c
        self.terms = clean

    @classmethod
    def coerce(cls, value) -> "ExpFunction":
        if isinstance(value, ExpFunction):
            return value
        return cls({ZERO_FREQUENCY: RationalFunction.coerce(value)})

    @classmethod
    def exp(cls, frequency: Mapping[str, object], coeff=1) -> "ExpFunction":
        return cls({make_frequency(frequency): coeff})

    @classmethod
    def zero(cls) -> "ExpFunction":
        return cls({})

    @property
    def variables(self):
        seen = []
        for freq, c in self.terms.items():
            for v in c.variables:
                if v not in seen:
                    seen.append(v)
            for v, _ in freq:
                if v not in seen:
                    seen.append(v)
        return tuple(seen)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_rational(self) -> bool:
        return all(freq == ZERO_FREQUENCY for freq in self.terms)

    def rational_part(self) -> RationalFunction:
        return self.terms.get(ZERO_FREQUENCY, RationalFunction.constant(0))

    def as_rational(self) -> RationalFunction:
        if not self.is_rational():
            raise ValueError(f"{self} has exponential terms")
        return self.rational_part()

    def frequencies(self):
        return sorted(self.terms)

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, ExpFunction):
            if isinstance(other, (int, Fraction, Polynomial, RationalFunction)):
                other = ExpFunction.coerce(other)
            else:
                return NotImplemented
        out = dict(self.terms)
        for freq, c in other.terms.items():
            if freq in out:
                s = out[freq] + c
                if s:
                    out[freq] = s
                else:
                    del out[freq]
            else:
                out[freq] = c
        r = object.__new__(ExpFunction)
        r.terms = out
        return r

    __radd__ = __add__

    def __neg__(self):
        r = object.__new__(ExpFunction)
        r.terms = {f: -c for f, c in self.terms.items()}
        return r

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Polynomial, RationalFunction)):
            if isinstance(other, (int, Fraction)) and not other:
                return ExpFunction.zero()
            return ExpFunction({f: c * other for f, c in self.terms.items()})
        if not isinstance(other, ExpFunction):
            return NotImplemented
        out: Dict[Frequency, RationalFunction] = {}
        for f1, c1 in self.terms.items():
            for f2, c2 in other.terms.items():
                f = add_frequencies(f1, f2)
                prod = c1 * c2
                out[f] = out[f] + prod if f in out else prod
        return ExpFunction(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, ExpFunction):
            if len(other.terms) != 1:
                raise ValueError("can only divide by a single-frequency exponential function")
            (freq, c), = other.terms.items()
            inv = make_frequency({v: -k for v, k in freq})
            return ExpFunction({add_frequencies(f, inv): v / c for f, v in self.terms.items()})
        return ExpFunction({f: c / other for f, c in self.terms.items()})

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("ExpFunction powers must be non-negative integers")
        result = ExpFunction.coerce(1)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Polynomial, RationalFunction)):
            other = ExpFunction.coerce(other)
        if not isinstance(other, ExpFunction):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- calculus -----------------------------------------------------
    def diff(self, var: str) -> "ExpFunction":
        out = {}
        for freq, c in self.terms.items():
            d = c.diff(var)
            lam = dict(freq).get(var)
            if lam:
                d = d + c * lam
            if d:
                out[freq] = d
        r = object.__new__(ExpFunction)
        r.terms = out
        return r

    def substitute(self, values: Mapping[str, object]) -> "ExpFunction":
        """Substitute into the rational coefficients.  Variables appearing in
        a frequency may only be shifted by constants, which rescales the
        coefficient by exp(l * a) and is therefore refused."""
        for freq in self.terms:
            for v, _ in freq:
                if v in values:
                    raise ValueError(f"cannot substitute into exponent variable {v!r}")
        return ExpFunction({f: c.substitute(values) for f, c in self.terms.items()})

    def evaluate_scaled(self, point):
        """Value at ``point`` divided by the single exponential factor.

        Returns ``(frequency, value)``; used where only ratios or ranks
        matter, so the positive factor exp(l . x) can be dropped exactly.
        """
        if not self.terms:
            return ZERO_FREQUENCY, Fraction(0)
        if len(self.terms) > 1:
            raise ValueError("cannot evaluate a multi-frequency function exactly")
        (freq, c), = self.terms.items()
        return freq, c.evaluate(point)

    def evaluate(self, point) -> Fraction:
        freq, value = self.evaluate_scaled(point)
        if freq != ZERO_FREQUENCY and value:
            raise ValueError("exp of a rational point is irrational; use evaluate_scaled")
        return value

    # -- printing -----------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for freq in sorted(self.terms):
            c = self.terms[freq]
            if freq == ZERO_FREQUENCY:
                parts.append(f"({c})")
            else:
                lin = " + ".join(f"{k}*{v}" for v, k in freq)
                parts.append(f"exp({lin})*({c})")
        return " + ".join(parts)

    def __repr__(self):
        return f"ExpFunction({str(self)!r})"
