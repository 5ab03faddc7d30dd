"""Polynomial-in-momenta first integrals of geodesic flows.

dim Q_d(g) is computed by prolongation-projection: the coefficient equations
of {H, F} = 0 are expanded in Taylor series at a generic base point x0, and
the number of free jets of order <= L is tracked until it stabilises with
a vanishing top-order symbol.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .exact import DenominatorVanishes, Echelon, Polynomial, RationalFunction, parse_expr
from .exact.linalg import determinant
from .exact.polynomial import monomials, monomials_upto
from .exact.ratfunc import poly_gcd
from .distributions import PRIMES, MAX_RESAMPLES, NonGenericPoint

DEFAULT_EXTRA_ORDERS = 6


class DegenerateMetric(ValueError):
    pass


class NoStabilization(RuntimeError):
    pass


def coordinates(n: int) -> Tuple[str, ...]:
    return tuple(f"x{i}" for i in range(1, n + 1))


def _rf(value, variables) -> RationalFunction:
    if isinstance(value, str):
        value = parse_expr(value, variables)
    return RationalFunction.coerce(value).with_variables(_merge(variables, RationalFunction.coerce(value).variables))


def _merge(a, b):
    return tuple(a) + tuple(v for v in b if v not in a)


class Metric:
    """Symmetric n x n matrix of rational functions in x1..xn.

    ``hamiltonian_factor`` is the constant in H = factor * g^ij p_i p_j used
    by :func:`geodesic_hamiltonian` (it does not affect Q_d).
    """

    def __init__(self, g: Sequence[Sequence], name: str = "", hamiltonian_factor=Fraction(1, 2)):
        n = len(g)
        if n == 0 or any(len(row) != n for row in g):
            raise ValueError("metric must be a nonempty square matrix")
        self.n = n
        self.variables = coordinates(n)
        self.g = [[_rf(c, self.variables) for c in row] for row in g]
        for row in self.g:
            for c in row:
                stray = [v for v in c.num.used_variables() + c.den.used_variables() if v not in self.variables]
                if stray:
                    raise ValueError(f"metric entry {c} uses {stray}; coordinates are {self.variables}")
        for i in range(n):
            for j in range(i + 1, n):
                if self.g[i][j] != self.g[j][i]:
                    raise ValueError(f"metric is not symmetric at ({i}, {j})")
        self.name = name
        self.hamiltonian_factor = Fraction(hamiltonian_factor)
        if not determinant(self.g):
            raise DegenerateMetric("det(g) vanishes identically")

    def inverse(self) -> List[List[RationalFunction]]:
        """g^{-1} by Gauss-Jordan over the rational function field."""
        n = self.n
        a = [list(self.g[i]) + [RationalFunction.constant(int(i == j)) for j in range(n)] for i in range(n)]
        for c in range(n):
            p = next((r for r in range(c, n) if a[r][c]), None)
            if p is None:
                raise DegenerateMetric("det(g) vanishes identically")
            a[c], a[p] = a[p], a[c]
            inv = 1 / a[c][c]
            a[c] = [x * inv for x in a[c]]
            for r in range(n):
                if r != c and a[r][c]:
                    f = a[r][c]
                    a[r] = [x - f * y for x, y in zip(a[r], a[c])]
        return [[RationalFunction.coerce(x).with_variables(self.variables) for x in row[n:]] for row in a]

    def __repr__(self):
        return f"Metric({self.name or 'n=%d' % self.n})"


class MomentumPolynomial:
    """sum_alpha c_alpha(x) p^alpha, homogeneous of degree d in p."""

    def __init__(self, n: int, terms: Mapping[Tuple[int, ...], object] | None = None, degree: int | None = None):
        self.n = n
        self.variables = coordinates(n)
        self.terms: Dict[Tuple[int, ...], RationalFunction] = {}
        for alpha, c in (terms or {}).items():
            alpha = tuple(alpha)
            if len(alpha) != n:
                raise ValueError(f"momentum exponent {alpha} has wrong length")
            c = _rf(c, self.variables)
            if c:
                self.terms[alpha] = c
        degs = {sum(a) for a in self.terms}
        if len(degs) > 1:
            raise ValueError(f"not homogeneous in momenta (degrees {sorted(degs)})")
        self.degree = degs.pop() if degs else (degree or 0)

    @classmethod
    def momentum(cls, n: int, i: int) -> "MomentumPolynomial":
        return cls(n, {tuple(int(j == i) for j in range(n)): 1})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, MomentumPolynomial) and self.n == other.n and (self - other).terms == {}

    def __add__(self, other):
        out = dict(self.terms)
        for a, c in other.terms.items():
            s = out.get(a, 0) + c
            if s:
                out[a] = s
            else:
                out.pop(a, None)
        return MomentumPolynomial(self.n, out, self.degree)

    def __neg__(self):
        return MomentumPolynomial(self.n, {a: -c for a, c in self.terms.items()}, self.degree)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, MomentumPolynomial):
            return MomentumPolynomial(self.n, {a: c * other for a, c in self.terms.items()}, self.degree)
        out: Dict[Tuple[int, ...], RationalFunction] = {}
        for a, c in self.terms.items():
            for b, e in other.terms.items():
                k = tuple(x + y for x, y in zip(a, b))
                out[k] = out.get(k, 0) + c * e
        return MomentumPolynomial(self.n, out, self.degree + other.degree)

    __rmul__ = __mul__

    def diff_x(self, i: int) -> "MomentumPolynomial":
        v = self.variables[i]
        return MomentumPolynomial(self.n, {a: c.diff(v) for a, c in self.terms.items()}, self.degree)

    def diff_p(self, i: int) -> "MomentumPolynomial":
        out = {}
        for a, c in self.terms.items():
            if a[i]:
                b = list(a)
                b[i] -= 1
                out[tuple(b)] = c * a[i]
        return MomentumPolynomial(self.n, out, max(self.degree - 1, 0))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for a, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(f"p{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(a) if e)
            parts.append(f"({c})*{mono}" if mono else f"({c})")
        return " + ".join(parts)

    def __repr__(self):
        return f"MomentumPolynomial({self})"


def poisson_bracket(F: MomentumPolynomial, G: MomentumPolynomial) -> MomentumPolynomial:
    """{F,G} = sum_i dF/dp_i dG/dx_i - dF/dx_i dG/dp_i."""
    if F.n != G.n:
        raise ValueError("momentum polynomials in different dimensions")
    out = MomentumPolynomial(F.n, {}, F.degree + G.degree - 1)
    for i in range(F.n):
        out = out + F.diff_p(i) * G.diff_x(i) - F.diff_x(i) * G.diff_p(i)
    return MomentumPolynomial(F.n, out.terms, F.degree + G.degree - 1)


def geodesic_hamiltonian(g: Metric, factor=None) -> MomentumPolynomial:
    """H = factor * g^ij p_i p_j (factor defaults to the metric's convention)."""
    factor = g.hamiltonian_factor if factor is None else Fraction(factor)
    inv = g.inverse()
    terms = {}
    n = g.n
    for i in range(n):
        for j in range(i, n):
            c = inv[i][j] * (factor if i == j else 2 * factor)
            if c:
                terms[tuple((k == i) + (k == j) for k in range(n))] = c
    return MomentumPolynomial(n, terms, 2)


# ----------------------------------------------------------------------
# determining system


@dataclass
class DeterminingEquation:
    """sum A[(sigma, i)] d_i b_sigma + sum B[sigma] b_sigma = 0 (coefficient of p^tau)."""

    tau: Tuple[int, ...]
    A: Dict[Tuple[Tuple[int, ...], int], RationalFunction]
    B: Dict[Tuple[int, ...], RationalFunction]


@dataclass
class DeterminingSystem:
    n: int
    d: int
    unknowns: List[Tuple[int, ...]]
    equations: List[DeterminingEquation]


def determining_system(g: Metric, d: int) -> DeterminingSystem:
    """Coefficient equations of {H, F} = 0 for F = sum b_sigma(x) p^sigma, |sigma| = d.

    H = g^ij p_i p_j (no factor 1/2; the count is scale invariant).
    """
    if d < 1:
        raise ValueError("degree must be at least 1")
    n = g.n
    H = geodesic_hamiltonian(g, 1)
    sigmas = list(monomials(n, d))
    eqs: Dict[Tuple[int, ...], DeterminingEquation] = {
        tau: DeterminingEquation(tau, {}, {}) for tau in monomials(n, d + 1)
    }

    def bump(store, key, val):
        s = store.get(key, 0) + val
        if s:
            store[key] = s
        else:
            store.pop(key, None)

    for alpha, h in H.terms.items():
        for i in range(n):
            dh = h.diff(g.variables[i])
            for sigma in sigmas:
                # dH/dp_i * dF/dx_i
                if alpha[i]:
                    tau = tuple(a - (k == i) + s for k, (a, s) in enumerate(zip(alpha, sigma)))
                    bump(eqs[tau].A, (sigma, i), h * alpha[i])
                # - dH/dx_i * dF/dp_i
                if sigma[i] and dh:
                    tau = tuple(a + s - (k == i) for k, (a, s) in enumerate(zip(alpha, sigma)))
                    bump(eqs[tau].B, sigma, -dh * sigma[i])
    return DeterminingSystem(n, d, sigmas, list(eqs.values()))


# ----------------------------------------------------------------------
# jets at a base point


def _lcm(a: Polynomial, b: Polynomial) -> Polynomial:
    if a.is_constant():
        return b
    if b.is_constant():
        return a
    return RationalFunction(a * b, poly_gcd(a, b)).num


def _taylor(p: Polynomial, point, variables) -> Dict[Tuple[int, ...], Fraction]:
    """Coefficients of p(x0 + t) as exponent -> value (exact, finite)."""
    return dict(p.with_variables(variables).shift(dict(zip(variables, point))).terms)


@dataclass
class JetLinearSystem:
    """Relations among the Taylor coefficients c[sigma, beta] of the b_sigma
    at the base point (|beta| <= order).  Column key (-|beta|, beta, sigma)
    puts the top order first, so its symbol rank is a pivot count."""

    system: DeterminingSystem
    point: Tuple[Fraction, ...]
    A: List[Dict[Tuple, Dict[Tuple[int, ...], Fraction]]]
    B: List[Dict[Tuple, Dict[Tuple[int, ...], Fraction]]]
    order: int = 0
    echelon: Echelon = field(default_factory=Echelon)

    @property
    def n(self) -> int:
        return self.system.n

    def jet_count(self, L: int) -> int:
        return len(self.system.unknowns) * comb(self.n + L, self.n)

    def prolong_to(self, L: int):
        """Add the Taylor coefficients of order L-1 of every equation."""
        while self.order < L:
            self.order += 1
            k = self.order - 1
            for A, B in zip(self.A, self.B):
                for beta in monomials(self.n, k):
                    row = self._row(A, B, beta)
                    if row:
                        self.echelon.add(row)

    def _row(self, A, B, beta):
        row: Dict[Tuple, Fraction] = {}

        def add(sigma, gamma, val):
            key = (-sum(gamma), gamma, sigma)
            s = row.get(key, 0) + val
            if s:
                row[key] = s
            else:
                row.pop(key, None)

        # [t^beta] a(t) * d_i b_sigma(t) = sum_gamma a_{beta-gamma} (gamma_i+1) c[sigma, gamma+e_i]
        for (sigma, i), coeffs in A.items():
            for delta, a in coeffs.items():
                if all(x <= y for x, y in zip(delta, beta)):
                    gamma = tuple(y - x for x, y in zip(delta, beta))
                    up = tuple(c + (k == i) for k, c in enumerate(gamma))
                    add(sigma, up, a * up[i])
        for sigma, coeffs in B.items():
            for delta, a in coeffs.items():
                if all(x <= y for x, y in zip(delta, beta)):
                    gamma = tuple(y - x for x, y in zip(delta, beta))
                    add(sigma, gamma, a)
        return row

    def free_jets(self) -> int:
        return self.jet_count(self.order) - self.echelon.rank

    def top_symbol_dim(self) -> int:
        top = self.jet_count(self.order) - self.jet_count(self.order - 1)
        rank_top = self.echelon.rank_below((-self.order + 1,))
        return top - rank_top


def jet_system(system: DeterminingSystem, point: Sequence) -> JetLinearSystem:
    """Clear denominators equation by equation and expand at the point."""
    variables = coordinates(system.n)
    As, Bs = [], []
    for eq in system.equations:
        den = Polynomial.constant(1, variables)
        for c in list(eq.A.values()) + list(eq.B.values()):
            den = _lcm(den, c.den.with_variables(variables))
        if den.evaluate(point) == 0:
            raise DenominatorVanishes(point)

        def cleared(c):
            q = RationalFunction(c.num.with_variables(variables) * den, c.den.with_variables(variables))
            return _taylor(q.num, point, variables)

        As.append({k: cleared(c) for k, c in eq.A.items()})
        Bs.append({k: cleared(c) for k, c in eq.B.items()})
    return JetLinearSystem(system, tuple(point), As, Bs)


def sample_base_point(g: Metric, seed: int = 0) -> Tuple[Fraction, ...]:
    """Rational point where no metric denominator and not det(g) vanishes."""
    rng = random.Random(seed)
    det = RationalFunction.coerce(determinant(g.g))
    for _ in range(MAX_RESAMPLES):
        pt = tuple(Fraction(rng.randint(2, 97), rng.choice(PRIMES)) for _ in range(g.n))
        try:
            if det.evaluate(pt) == 0:
                continue
            for row in g.g:
                for c in row:
                    c.evaluate(pt)
        except DenominatorVanishes:
            continue
        return pt
    raise NonGenericPoint("no admissible base point found")


@dataclass
class IntegralDimension:
    dimension: int
    history: List[Tuple[int, int, int]]  # (L, D(L), dim of top-order symbol)
    point: Tuple[Fraction, ...]

    def __int__(self):
        return self.dimension


def integral_dimension_report(g: Metric, d: int, extra_orders: int = DEFAULT_EXTRA_ORDERS, seed: int = 0,
                              point: Sequence | None = None) -> IntegralDimension:
    system = determining_system(g, d)
    for attempt in range(MAX_RESAMPLES):
        pt = tuple(map(Fraction, point)) if point is not None else sample_base_point(g, seed + attempt)
        try:
            jets = jet_system(system, pt)
            break
        except DenominatorVanishes:
            if point is not None:
                raise NonGenericPoint(f"equation denominators vanish at {pt}") from None
    else:
        raise NonGenericPoint("no admissible base point found")
    history = []
    last = None
    for L in range(d + 1, d + 2 + extra_orders):
        jets.prolong_to(L)
        D = jets.free_jets()
        top = jets.top_symbol_dim()
        history.append((L, D, top))
        if last is not None and D == last and top == 0:
            return IntegralDimension(D, history, pt)
        last = D
    raise NoStabilization(f"no stabilisation up to order {d + 1 + extra_orders}: {history}")


def integral_dimension(g: Metric, d: int, extra_orders: int = DEFAULT_EXTRA_ORDERS, seed: int = 0) -> int:
    """dim Q_d(g) at a generic point."""
    return integral_dimension_report(g, d, extra_orders, seed).dimension


# ----------------------------------------------------------------------
# presets


def _diag(entries, n):
    return [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)]


def flat(n: int) -> Metric:
    return Metric(_diag([1] * n, n), f"flat({n})")


def lemma1(n: int) -> Metric:
    """g = x1 (dx1^2 + ... + dxn^2)."""
    return Metric(_diag(["x1"] * n, n), f"lemma1({n})", hamiltonian_factor=1)


def lemma2(n: int, c=1, R=1) -> Metric:
    """g = dx1^2 + (dx2^2 + ... + dxn^2) / (R^2 + x2^2 + ... + xn^2)^2.

    The sign of ``c`` selects the curvature sign; c < 0 replaces R^2 by -R^2
    (an extrapolation of the positive case).
    """
    R = Fraction(R)
    r2 = R * R if Fraction(c) >= 0 else -R * R
    q = " + ".join([f"({r2})"] + [f"x{i}^2" for i in range(2, n + 1)])
    entry = f"1/({q})^2"
    return Metric(_diag([1] + [entry] * (n - 1), n), f"lemma2({n},{c},{R})", hamiltonian_factor=1)


def revolution(n: int, f: str) -> Metric:
    """ds^2 = dx1^2 + f(x1)^2 ds^2_{n-1}, round sphere in stereographic
    coordinates x2..xn."""
    if n < 2:
        raise ValueError("need n >= 2")
    q = " + ".join(["1"] + [f"x{i}^2" for i in range(2, n + 1)])
    entry = f"4*({f})^2/({q})^2"
    return Metric(_diag([1] + [entry] * (n - 1), n), f"revolution({n},{f})")


PRESETS = {
    "flat": flat,
    "lemma1": lemma1,
    "lemma2": lemma2,
    "revolution": revolution,
}


def preset(name: str, *args) -> Metric:
    try:
        factory = PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown metric preset {name!r}; known: {sorted(PRESETS)}") from None
    return factory(*args)
