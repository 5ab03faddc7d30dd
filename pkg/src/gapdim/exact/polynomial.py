"""Sparse multivariate polynomials with rational coefficients.

A polynomial carries an ordered tuple of variable names and a dict mapping
exponent tuples to nonzero ``Fraction`` coefficients.  Binary operations on
polynomials declared over different variable tuples first merge the tuples
(left operand's order first), so ``x + z1`` just works.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Dict, Iterable, Mapping, Sequence, Tuple

Exponent = Tuple[int, ...]


def as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"cannot use {type(c).__name__} as a rational coefficient")


def grlex_key(e: Exponent):
    return (sum(e), e)


class Polynomial:
    """Immutable sparse polynomial over Q.

    >>> x, y = Polynomial.variables_of("x", "y")
    >>> str((x + y) ** 2)
    'x^2 + 2*x*y + y^2'
    """

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exponent, object] | None = None):
        self.variables = tuple(variables)
        n = len(self.variables)
        clean: Dict[Exponent, Fraction] = {}
        if terms:
            for e, c in terms.items():
                if len(e) != n:
                    raise ValueError(f"exponent {e} does not match variables {self.variables}")
                c = as_fraction(c)
                if c:
                    clean[tuple(e)] = c
        self.terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def _raw(cls, variables, terms):
        p = object.__new__(cls)
        p.variables = variables
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, c, variables: Sequence[str] = ()) -> "Polynomial":
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, name: str, variables: Sequence[str] | None = None) -> "Polynomial":
        variables = (name,) if variables is None else tuple(variables)
        if name not in variables:
            variables = variables + (name,)
        e = tuple(1 if v == name else 0 for v in variables)
        return cls._raw(variables, {e: Fraction(1)})

    @classmethod
    def variables_of(cls, *names: str):
        return tuple(cls.var(v, names) for v in names)

    @classmethod
    def monomial(cls, variables: Sequence[str], exponent: Exponent, coeff=1) -> "Polynomial":
        return cls(variables, {tuple(exponent): coeff})

    # -- variable bookkeeping -----------------------------------------
    def with_variables(self, variables: Sequence[str]) -> "Polynomial":
        """Re-embed into a variable tuple that contains every variable in use."""
        variables = tuple(variables)
        if variables == self.variables:
            return self
        index = {v: i for i, v in enumerate(variables)}
        n = len(variables)
        out = {}
        for e, c in self.terms.items():
            ne = [0] * n
            for v, k in zip(self.variables, e):
                if k:
                    if v not in index:
                        raise ValueError(f"variable {v!r} in use but missing from {variables}")
                    ne[index[v]] = k
            out[tuple(ne)] = c
        return Polynomial._raw(variables, out)

    def used_variables(self) -> Tuple[str, ...]:
        used = [False] * len(self.variables)
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used[i] = True
        return tuple(v for v, u in zip(self.variables, used) if u)

    def _align(self, other: "Polynomial"):
        if self.variables == other.variables:
            return self.variables, self.terms, other.terms
        merged = self.variables + tuple(v for v in other.variables if v not in self.variables)
        return merged, self.with_variables(merged).terms, other.with_variables(merged).terms

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other, self.variables)
        return NotImplemented

    # -- predicates ---------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()), Fraction(0))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree(self, var: str) -> int:
        if var not in self.variables:
            return 0 if self.terms else -1
        i = self.variables.index(var)
        return max((e[i] for e in self.terms), default=-1)

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        variables, a, b = self._align(other)
        out = dict(a)
        for e, c in b.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial._raw(variables, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.variables, {e: -c for e, c in self.terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Polynomial._raw(self.variables, {})
            return Polynomial._raw(self.variables, {e: c * other for e, c in self.terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        variables, a, b = self._align(other)
        out: Dict[Exponent, Fraction] = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(i + j for i, j in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    del out[e]
        return Polynomial._raw(variables, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial exponent must be a non-negative integer")
        result = Polynomial.constant(1, self.variables)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        return self * as_fraction(c)

    # -- comparison ---------------------------------------------------
    def canonical(self):
        items = []
        for e, c in self.terms.items():
            key = tuple((v, k) for v, k in zip(self.variables, e) if k)
            items.append((key, c))
        return frozenset(items)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other, self.variables)
        if not isinstance(other, Polynomial):
            return NotImplemented
        if self.variables == other.variables:
            return self.terms == other.terms
        return self.canonical() == other.canonical()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.canonical())
        return self._hash

    # -- calculus and evaluation -------------------------------------
    def diff(self, var: str) -> "Polynomial":
        if var not in self.variables:
            return Polynomial._raw(self.variables, {})
        i = self.variables.index(var)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                ne = e[:i] + (k - 1,) + e[i + 1:]
                out[ne] = c * k
        return Polynomial._raw(self.variables, out)

    def evaluate(self, point) -> Fraction:
        """Evaluate at a point given as a mapping name -> value or a sequence
        aligned with ``self.variables``."""
        values = self._point_values(point)
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for v, k in zip(values, e):
                if k:
                    t *= v ** k
            total += t
        return total

    def _point_values(self, point):
        if isinstance(point, Mapping):
            values = []
            for v, k in zip(self.variables, self.degrees_used()):
                if v in point:
                    values.append(as_fraction(point[v]))
                elif k:
                    raise KeyError(f"no value for variable {v!r}")
                else:
                    values.append(Fraction(0))
            return values
        values = [as_fraction(v) for v in point]
        if len(values) != len(self.variables):
            raise ValueError(f"point has {len(values)} coordinates, expected {len(self.variables)}")
        return values

    def degrees_used(self):
        used = [0] * len(self.variables)
        for e in self.terms:
            for i, k in enumerate(e):
                if k > used[i]:
                    used[i] = k
        return used

    def substitute(self, values: Mapping[str, object]) -> "Polynomial":
        """Substitute rational constants or polynomials for some variables."""
        if not any(v in values for v in self.variables):
            return self
        keep = tuple(v for v in self.variables if v not in values)
        subs = {v: values[v] for v in self.variables if v in values}
        extra = []
        for s in subs.values():
            if isinstance(s, Polynomial):
                extra.extend(v for v in s.variables if v not in keep and v not in extra)
        target = keep + tuple(extra)
        keep_idx = [self.variables.index(v) for v in keep]
        sub_idx = [(self.variables.index(v), subs[v]) for v in subs]
        cache = {}
        result = Polynomial(target, {})
        for e, c in self.terms.items():
            base = tuple(e[i] for i in keep_idx) + (0,) * len(extra)
            term = Polynomial._raw(target, {base: c})
            for i, s in sub_idx:
                k = e[i]
                if not k:
                    continue
                if isinstance(s, Polynomial):
                    key = (i, k)
                    if key not in cache:
                        cache[key] = s.with_variables(target) ** k
                    term = term * cache[key]
                else:
                    term = term * (as_fraction(s) ** k)
            result = result + term
        return result

    def shift(self, point: Mapping[str, object]) -> "Polynomial":
        """Return p(x + a), i.e. the Taylor re-centering at ``point``."""
        values = {}
        for v in self.variables:
            a = as_fraction(point.get(v, 0))
            values[v] = Polynomial._raw(self.variables, {
                tuple(1 if w == v else 0 for w in self.variables): Fraction(1),
                **({(0,) * len(self.variables): a} if a else {}),
            })
        return self.substitute(values).with_variables(self.variables)

    # -- structure ----------------------------------------------------
    def leading_term(self) -> Tuple[Exponent, Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def leading_coefficient(self) -> Fraction:
        return self.leading_term()[1]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def content(self) -> Fraction:
        """Positive rational c with self / c having coprime integer coefficients."""
        from math import gcd, lcm
        if not self.terms:
            return Fraction(0)
        nums = [c.numerator for c in self.terms.values()]
        dens = [c.denominator for c in self.terms.values()]
        return Fraction(gcd(*nums), lcm(*dens))

    def monic(self) -> "Polynomial":
        return self * (1 / self.leading_coefficient())

    def homogeneous_part(self, degree: int) -> "Polynomial":
        return Polynomial._raw(self.variables, {e: c for e, c in self.terms.items() if sum(e) == degree})

    # -- printing -----------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.variables, e) if k
            )
            mag = abs(c)
            sign = "-" if c < 0 else "+"
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Polynomial({str(self)!r}, variables={self.variables!r})"


def monomials(nvars: int, degree: int) -> Iterable[Exponent]:
    """All exponent tuples of total ``degree`` in ``nvars`` variables, in
    descending lexicographic order (x1^d first)."""
    if nvars == 0:
        if degree == 0:
            yield ()
        return
    if nvars == 1:
        yield (degree,)
        return
    for first in range(degree, -1, -1):
        for rest in monomials(nvars - 1, degree - first):
            yield (first,) + rest


def monomials_upto(nvars: int, degree: int) -> Iterable[Exponent]:
    for d in range(degree + 1):
        yield from monomials(nvars, d)


def count_monomials(nvars: int, degree: int) -> int:
    return comb(nvars + degree - 1, degree)
