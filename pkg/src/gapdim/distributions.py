"""Vector distributions on R^N: brackets, derived flags, symbols at a point,
Monge equations, symmetry checks and polynomial symmetry solving.

Vector field coefficients are ExpFunctions, so fields such as
exp(-x) * (z2 d/dy - d/dz) are handled exactly; identities are tested per
frequency.  Pointwise ranks need rational coefficients.
"""

from __future__ import annotations

import random
import warnings
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .exact import DenominatorVanishes, Echelon, ExpFunction, Polynomial, RationalFunction, parse_expr
from .exact.polynomial import monomials_upto
from .exact.ratfunc import poly_gcd
from .lie import LieAlgebraPresentation, NotClosed, express_in_basis
from .tanaka import GradedNilpotentAlgebra

PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)
MAX_RESAMPLES = 50


class NonGenericPoint(ValueError):
    pass


def _exp(value, variables=()) -> ExpFunction:
    if isinstance(value, str):
        value = parse_expr(value, variables)
    return ExpFunction.coerce(value)


class VectorField:
    """V = sum_j a_j d/dx_j with ExpFunction coefficients."""

    __slots__ = ("variables", "coeffs")

    def __init__(self, variables: Sequence[str], coeffs):
        self.variables = tuple(variables)
        if isinstance(coeffs, Mapping):
            unknown = [k for k in coeffs if k not in self.variables]
            if unknown:
                raise KeyError(f"components {unknown} are not coordinates {self.variables}")
            coeffs = [coeffs.get(v, 0) for v in self.variables]
        if len(coeffs) != len(self.variables):
            raise ValueError(f"need {len(self.variables)} coefficients, got {len(coeffs)}")
        self.coeffs = tuple(_exp(c, self.variables) for c in coeffs)
        for c in self.coeffs:
            stray = [v for v in c.variables if v not in self.variables]
            if stray:
                raise ValueError(f"coefficient {c} uses {stray}, not among the coordinates")

    @property
    def ambient_dim(self) -> int:
        return len(self.variables)

    def __call__(self, f) -> ExpFunction:
        """Derivative of a function along the field."""
        f = ExpFunction.coerce(f)
        out = ExpFunction.zero()
        for v, a in zip(self.variables, self.coeffs):
            if a:
                d = f.diff(v)
                if d:
                    out = out + a * d
        return out

    def is_rational(self) -> bool:
        return all(c.is_rational() for c in self.coeffs)

    def rational_coeffs(self) -> List[RationalFunction]:
        return [c.as_rational() for c in self.coeffs]

    def evaluate(self, point) -> List[Fraction]:
        return [c.evaluate(point) for c in self.coeffs]

    def __add__(self, other):
        _check_same(self, other)
        return VectorField(self.variables, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        _check_same(self, other)
        return VectorField(self.variables, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return VectorField(self.variables, [-a for a in self.coeffs])

    def scale(self, c) -> "VectorField":
        return VectorField(self.variables, [a * c for a in self.coeffs])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, VectorField) and self.variables == other.variables and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.variables, self.coeffs))

    def __str__(self):
        parts = [f"({c})*d_{v}" for v, c in zip(self.variables, self.coeffs) if c]
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"VectorField({self})"


def _check_same(V, W):
    if V.variables != W.variables:
        raise ValueError(f"vector fields live on different coordinates: {V.variables} vs {W.variables}")


def coordinate_field(variables: Sequence[str], name: str) -> VectorField:
    return VectorField(variables, {name: 1})


def lie_bracket(V: VectorField, W: VectorField) -> VectorField:
    """[V,W]^j = V(W^j) - W(V^j)."""
    _check_same(V, W)
    return VectorField(V.variables, [V(b) - W(a) for a, b in zip(V.coeffs, W.coeffs)])


@dataclass
class Distribution:
    generators: List[VectorField]
    variables: Tuple[str, ...]

    def __init__(self, generators: Sequence[VectorField], variables: Sequence[str] | None = None):
        if not generators:
            raise ValueError("a distribution needs at least one generator")
        self.variables = tuple(variables or generators[0].variables)
        for g in generators:
            if g.variables != self.variables:
                raise ValueError("generators must share the coordinates")
        self.generators = list(generators)

    @property
    def ambient_dim(self) -> int:
        return len(self.variables)

    @property
    def rank(self) -> int:
        return len(self.generators)


# ----------------------------------------------------------------------
# generic points


class PointSampler:
    """Coordinates a/p with a in [2, 97] and p prime, from a seeded RNG."""

    def __init__(self, variables: Sequence[str], seed: int = 0):
        self.variables = tuple(variables)
        self.rng = random.Random(seed)

    def sample(self) -> Dict[str, Fraction]:
        return {v: Fraction(self.rng.randint(2, 97), self.rng.choice(PRIMES)) for v in self.variables}


def _values_at(fields: Sequence[VectorField], point) -> List[List[Fraction]]:
    for f in fields:
        if not f.is_rational():
            raise ValueError("pointwise evaluation needs rational coefficients")
    return [f.evaluate(point) for f in fields]


def _rank_at(fields, point) -> int:
    rows = [{j: v for j, v in enumerate(vals) if v} for vals in _values_at(fields, point)]
    return Echelon().extend(rows).rank


def _generic_point(delta: Distribution, sampler: PointSampler):
    """A sample point where the generators are defined and independent."""
    for _ in range(MAX_RESAMPLES):
        pt = sampler.sample()
        try:
            if _rank_at(delta.generators, pt) == delta.rank:
                return pt
        except DenominatorVanishes:
            continue
    raise NonGenericPoint(f"no point with independent generators after {MAX_RESAMPLES} samples")


# ----------------------------------------------------------------------
# derived flag


@dataclass
class GrowthVector:
    dims: List[int]
    saturated: bool
    point: Dict[str, Fraction] = field(default_factory=dict)
    levels: List[List[VectorField]] = field(default_factory=list, repr=False)

    def __iter__(self):
        return iter(self.dims)

    def as_tuple(self) -> Tuple[int, ...]:
        return tuple(self.dims)


def _flag_at(delta: Distribution, point) -> GrowthVector:
    """Weak derived flag, each level pruned to fields independent at ``point``.

    ``levels[i]`` holds the new fields of Delta_{i+1}; each of them is a
    bracket [G, Y] of a generator with a field of the previous level.
    """
    N = delta.ambient_dim
    ech = Echelon()
    base = []
    for g in delta.generators:
        if ech.add({j: v for j, v in enumerate(g.evaluate(point)) if v}):
            base.append(g)
    if len(base) < delta.rank:
        raise NonGenericPoint("generators are dependent at the point")
    levels = [base]
    dims = [ech.rank]
    while dims[-1] < N:
        new = []
        for g in base:
            for Y in levels[-1]:
                B = lie_bracket(g, Y)
                if B.is_zero():
                    continue
                if ech.add({j: v for j, v in enumerate(B.evaluate(point)) if v}):
                    new.append(B)
        dims.append(ech.rank)
        if not new:
            break
        levels.append(new)
    return GrowthVector(dims, dims[-1] == N, dict(point), levels)


def derived_flag(delta: Distribution, point: Mapping | None = None, seed: int = 0) -> GrowthVector:
    """Growth vector of the weak derived flag at a generic point.

    With no point given, the dims are computed at two seeded sample points;
    if they disagree, the majority over five samples wins (with a warning).
    """
    if point is not None:
        return _flag_at(delta, point)
    sampler = PointSampler(delta.variables, seed)
    results = []
    attempts = 0
    while len(results) < 2:
        attempts += 1
        if attempts > MAX_RESAMPLES:
            raise NonGenericPoint("could not find generic points")
        try:
            results.append(_flag_at(delta, _generic_point(delta, sampler)))
        except DenominatorVanishes:
            continue
    if results[0].dims == results[1].dims:
        return results[0]
    while len(results) < 5:
        try:
            results.append(_flag_at(delta, _generic_point(delta, sampler)))
        except DenominatorVanishes:
            continue
    votes = Counter(tuple(r.dims) for r in results)
    best, _ = votes.most_common(1)[0]
    warnings.warn(f"growth vector differs between sample points: {dict(votes)}; using {best}")
    return next(r for r in results if tuple(r.dims) == best)


# ----------------------------------------------------------------------
# symbol algebra at a point


def symbol_at_point(delta: Distribution, point: Mapping | None = None, seed: int = 0) -> GradedNilpotentAlgebra:
    """Graded nilpotent symbol m = g_-1 + g_-2 + ... of the distribution at a point."""
    flag = derived_flag(delta, point, seed)
    pt = flag.point
    fields, degrees = [], []
    for depth, level in enumerate(flag.levels, start=1):
        fields.extend(level)
        degrees.extend([-depth] * len(level))
    depth = len(flag.levels)
    values = [{j: v for j, v in enumerate(f.evaluate(pt)) if v} for f in fields]
    names = [f"e{i + 1}" for i in range(len(fields))]
    brackets = {}
    for a, b in combinations(range(len(fields)), 2):
        target = degrees[a] + degrees[b]
        B = lie_bracket(fields[a], fields[b])
        if B.is_zero():
            continue
        # express in the adapted basis of Delta_{-target}; keep the top level
        allowed = [i for i in range(len(fields)) if degrees[i] >= max(target, -depth)]
        vec = {j: v for j, v in enumerate(B.evaluate(pt)) if v}
        coords = express_in_basis([values[i] for i in allowed], vec, delta.ambient_dim)
        if coords is None:
            raise NonGenericPoint(f"bracket of {names[a]}, {names[b]} leaves the flag level; point not regular")
        if target < -depth:
            continue
        top = {names[allowed[i]]: c for i, c in coords.items() if degrees[allowed[i]] == target}
        if top:
            brackets[(names[a], names[b])] = top
    return GradedNilpotentAlgebra(names, degrees, brackets)


# ----------------------------------------------------------------------
# annihilator and symmetries


def annihilator(delta: Distribution) -> List[List[RationalFunction]]:
    """N - rank 1-forms (coefficient lists) vanishing on the distribution."""
    for g in delta.generators:
        if not g.is_rational():
            raise ValueError("annihilator needs rational generator coefficients")
    rows = [{j: c for j, c in enumerate(g.rational_coeffs()) if c} for g in delta.generators]
    ech = Echelon(exact_rational=False)
    for r in rows:
        ech.add(r)
    if ech.rank < delta.rank:
        raise NonGenericPoint("generators are dependent over the function field")
    N = delta.ambient_dim
    forms = []
    for v in ech.kernel_basis(range(N)):
        forms.append([RationalFunction.coerce(v[j]) if j in v else RationalFunction.constant(0) for j in range(N)])
    return forms


def _pair(form: Sequence, V: VectorField) -> ExpFunction:
    out = ExpFunction.zero()
    for w, a in zip(form, V.coeffs):
        if w and a:
            out = out + a * w
    return out


def symmetry_defects(V: VectorField, delta: Distribution, forms=None) -> List[Tuple[int, int]]:
    """(generator, form) index pairs with omega([V, G]) != 0."""
    _check_same(V, delta.generators[0])
    forms = annihilator(delta) if forms is None else forms
    bad = []
    for i, G in enumerate(delta.generators):
        B = lie_bracket(V, G)
        for k, w in enumerate(forms):
            if _pair(w, B):
                bad.append((i, k))
    return bad


def is_symmetry(V: VectorField, delta: Distribution, forms=None) -> bool:
    return not symmetry_defects(V, delta, forms)


# ----------------------------------------------------------------------
# polynomial symmetries


def _lcm(a: Polynomial, b: Polynomial) -> Polynomial:
    if a.is_constant():
        return b
    if b.is_constant():
        return a
    g = poly_gcd(a, b)
    q = RationalFunction(a * b, g)
    return q.num


def _cleared(values: Sequence[RationalFunction], variables) -> List[Polynomial]:
    den = Polynomial.constant(1, variables)
    for v in values:
        den = _lcm(den, v.den.with_variables(variables))
    out = []
    for v in values:
        q = RationalFunction(v.num.with_variables(variables) * den, v.den.with_variables(variables))
        if not q.is_polynomial():
            raise AssertionError("denominator clearing failed")
        out.append(q.num.with_variables(variables))
    return out


@dataclass
class PolynomialSymmetries:
    dimension: int
    basis: List[VectorField]
    degree_cap: int


def polynomial_symmetries(delta: Distribution, degree_cap: int = 4, seed: int = 0) -> PolynomialSymmetries:
    """All symmetries with polynomial coefficients of total degree <= degree_cap.

    For the ansatz component V^j = x^a the condition omega([V, G]) = 0
    contributes x^a * sum_l omega_l d_j G^l - omega_j * G(x^a); the
    coefficients of every monomial of every (omega, G) pair give one linear
    equation on the unknown coefficients.  ``seed`` is accepted for interface
    symmetry; the computation is exact and uses no sample points.
    """
    X = delta.variables
    N = len(X)
    forms = [[c.with_variables(X) for c in w] for w in annihilator(delta)]
    gens = [[RationalFunction.coerce(c).with_variables(X) for c in g.rational_coeffs()] for g in delta.generators]
    monos = list(monomials_upto(N, degree_cap))
    columns = [(j, a) for j in range(N) for a in monos]
    colidx = {c: i for i, c in enumerate(columns)}
    rows: Dict[Tuple, Dict[int, Fraction]] = {}

    def add(key, col, val):
        row = rows.setdefault(key, {})
        v = row.get(col, 0) + val
        if v:
            row[col] = v
        else:
            row.pop(col, None)

    for p, (G, w) in enumerate((G, w) for G in gens for w in forms):
        A = []
        for j in range(N):
            s = RationalFunction.constant(0)
            for l in range(N):
                if w[l] and G[l]:
                    d = G[l].diff(X[j])
                    if d:
                        s = s + w[l] * d
            A.append(s)
        WG = [w[j] * G[i] for j in range(N) for i in range(N)]
        polys = _cleared(A + WG, X)
        Ap, WGp = polys[:N], polys[N:]
        for j in range(N):
            for a in monos:
                col = colidx[(j, a)]
                for e, c in Ap[j].terms.items():
                    add((p, tuple(x + y for x, y in zip(e, a))), col, c)
                for i in range(N):
                    if a[i] == 0:
                        continue
                    for e, c in WGp[j * N + i].terms.items():
                        key = tuple(x + y - (t == i) for t, (x, y) in enumerate(zip(e, a)))
                        add((p, key), col, -a[i] * c)
    ech = Echelon().extend(r for r in rows.values() if r)
    basis = []
    for vec in ech.kernel_basis(range(len(columns))):
        comps: List[Polynomial] = [Polynomial.constant(0, X) for _ in range(N)]
        for col, c in vec.items():
            j, a = columns[col]
            comps[j] = comps[j] + Polynomial.monomial(X, a, c)
        basis.append(VectorField(X, comps))
    return PolynomialSymmetries(len(basis), basis, degree_cap)


# ----------------------------------------------------------------------
# structure constants of a list of fields


def _common_denominator(fields: Sequence[VectorField]) -> Polynomial:
    X = fields[0].variables
    den = Polynomial.constant(1, X)
    for V in fields:
        for c in V.coeffs:
            for rf in c.terms.values():
                den = _lcm(den, rf.den.with_variables(X))
    return den


def _over(V: VectorField, den: Polynomial) -> Dict[Tuple, Fraction]:
    """Numerator coefficients of den * V (polynomial times exponentials)."""
    X = V.variables
    out = {}
    for j, c in enumerate(V.coeffs):
        for freq, rf in c.terms.items():
            q = RationalFunction(rf.num.with_variables(X) * den, rf.den.with_variables(X))
            if not q.is_polynomial():
                return None
            for e, a in q.num.with_variables(X).terms.items():
                out[(j, freq, e)] = a
    return out


def structure_constants(fields: Sequence[VectorField], names: Sequence[str] | None = None) -> LieAlgebraPresentation:
    """Constants c^k_ij with [V_i, V_j] = sum_k c^k_ij V_k, exactly."""
    if not fields:
        return LieAlgebraPresentation([], {})
    names = list(names) if names else [f"W{i + 1}" for i in range(len(fields))]
    brackets = {(a, b): lie_bracket(fields[a], fields[b]) for a, b in combinations(range(len(fields)), 2)}
    den = _common_denominator(list(fields) + [B for B in brackets.values()])
    vecs = [_over(V, den) for V in fields]
    keys = sorted({k for v in vecs for k in v}, key=repr)
    if len(express_basis := _independent(vecs, keys)) != len(fields):
        raise ValueError("fields are linearly dependent over the constants")
    table = {}
    for (a, b), B in brackets.items():
        if B.is_zero():
            continue
        target = _over(B, den)
        extra = [k for k in target if k not in set(keys)]
        coords = None
        if not extra:
            pos = {k: i for i, k in enumerate(keys)}
            coords = express_in_basis(
                [{pos[k]: v for k, v in vec.items()} for vec in vecs],
                {pos[k]: v for k, v in target.items()},
                len(keys),
            )
        if coords is None:
            raise NotClosed(names[a], names[b])
        table[(names[a], names[b])] = {names[k]: c for k, c in coords.items()}
    return LieAlgebraPresentation(names, table)


def _independent(vecs, keys):
    ech = Echelon()
    pos = {k: i for i, k in enumerate(keys)}
    return [v for v in vecs if ech.add({pos[k]: c for k, c in v.items()})]


# ----------------------------------------------------------------------
# Monge equations


def monge_variables(n: int) -> Tuple[str, ...]:
    return ("x", "y", "z") + tuple(f"z{i}" for i in range(1, n + 1))


@dataclass
class MongeEquation:
    """y' = F(x, y, z, z1, ..., zn)."""

    n: int
    F: ExpFunction
    name: str = ""

    def __init__(self, n: int, F, name: str = ""):
        if n < 1:
            raise ValueError("order must be at least 1")
        self.n = n
        X = monge_variables(n)
        self.F = _exp(F, X)
        stray = [v for v in self.F.variables if v not in X]
        if stray:
            raise ValueError(f"F uses {stray}; allowed variables are {X}")
        self.name = name

    @property
    def variables(self) -> Tuple[str, ...]:
        return monge_variables(self.n)


def total_derivative(eq: MongeEquation) -> VectorField:
    """D_x = d_x + z1 d_z + ... + z_n d_{z_{n-1}} + F d_y."""
    X = eq.variables
    comps = {"x": 1, "y": eq.F, "z": "z1"}
    for i in range(1, eq.n):
        comps[f"z{i}"] = f"z{i + 1}"
    return VectorField(X, comps)


def monge_distribution(eq: MongeEquation) -> Distribution:
    X = eq.variables
    return Distribution([total_derivative(eq), coordinate_field(X, X[-1])], X)


def hilbert_cartan() -> MongeEquation:
    return MongeEquation(2, "z2^2", "hilbert_cartan")


def power(m, n: int = 2) -> MongeEquation:
    """y' = (z^(n))^m for an integer m."""
    m = int(m)
    return MongeEquation(n, f"z{n}^{m}" if m >= 0 else f"1/z{n}^{-m}", f"power({m},{n})")


def _zname(j: int) -> str:
    return "z" if j == 0 else f"z{j}"


def perturbed(n: int, j: int, eps) -> MongeEquation:
    """y' = (z^(n))^2 + eps (z^(j))^2 with 0 <= j < n."""
    if not 0 <= j < n:
        raise ValueError("need 0 <= j < n")
    eps = Fraction(eps)
    return MongeEquation(n, f"z{n}^2 + ({eps})*{_zname(j)}^2", f"perturbed({n},{j},{eps})")


def submax26(eps=1) -> MongeEquation:
    """y' = (z''')^2 + eps^2 (z'')^2."""
    eps = Fraction(eps)
    return perturbed(3, 2, eps * eps)


MONGE_PRESETS = {
    "hilbert_cartan": hilbert_cartan,
    "power": power,
    "perturbed": perturbed,
    "submax26": submax26,
}


def monge_preset(name: str, *args) -> MongeEquation:
    try:
        factory = MONGE_PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown Monge preset {name!r}; known: {sorted(MONGE_PRESETS)}") from None
    return factory(*args)


# ----------------------------------------------------------------------
# symmetry generators of the sub-maximal models


def w7_fields(m: int = 3) -> List[VectorField]:
    """W1..W7 for y' = (z'')^m, m an integer other than 0, 1."""
    m = int(m)
    if m in (0, 1):
        raise ValueError("m = 0, 1 give the Engel distribution")
    X = monge_variables(2)
    fm = Fraction(m)
    z2 = RationalFunction.var("z2", X)
    W = [
        {"x": 1},
        {"y": 1},
        {"z": 1},
        {"x": "x", "y": "y", "z": "2*z", "z1": "z1"},
        {"z": "x", "z1": 1},
        {"y": m * RationalFunction.var("y", X), "z": "z", "z1": "z1", "z2": "z2"},
        {
            "x": z2 ** (m - 1),
            # (m - 1) * integral of z2^(2m-2) dz2
            "y": (fm - 1) / (2 * fm - 1) * z2 ** (2 * m - 1),
            "z": RationalFunction.var("z1", X) * z2 ** (m - 1) - RationalFunction.var("y", X) / fm,
            "z1": (1 - 1 / fm) * z2 ** m,
        },
    ]
    return [VectorField(X, w) for w in W]


def submax26_fields(eps=1) -> List[VectorField]:
    """W1..W9 for y' = (z''')^2 + eps^2 (z'')^2, eps rational and nonzero."""
    e = Fraction(eps)
    if not e:
        raise ValueError("eps must be nonzero")
    X = monge_variables(3)
    e2, e3 = e * e, e * e * e
    em = ExpFunction.exp({"x": -e})
    ep = ExpFunction.exp({"x": e})
    W = [
        {"x": 1},
        {"y": 1},
        {"z": 1},
        {"y": "2*y", "z": "z", "z1": "z1", "z2": "z2", "z3": "z3"},
        {"z": "x", "z1": 1},
        {"y": f"2*({e2})*z1", "z": "x^2/2", "z1": "x", "z2": 1},
        {"y": f"2*(z2 + ({e2})*(x*z1 - z))", "z": "x^3/6", "z1": "x^2/2", "z2": "x", "z3": 1},
        {"y": em * _exp(f"2*({e3})*z2", X), "z": -em, "z1": em * e, "z2": em * (-e2), "z3": em * e3},
        {"y": ep * _exp(f"2*({e3})*z2", X), "z": ep, "z1": ep * e, "z2": ep * e2, "z3": ep * e3},
    ]
    return [VectorField(X, w) for w in W]


def _shift_field(n: int, e2: Fraction, h: ExpFunction, X) -> VectorField:
    """V_h = phi_h d_y + sum_i h^(i) d_{z_i}, for h with h^(2n) = e2 h^(2n-2)."""
    ders = [h]
    for _ in range(n + 1):
        ders.append(ders[-1].diff("x"))
    g = ders[n - 1] * (2 * e2) - ders[n + 1] * 2
    gd = [g]
    for _ in range(max(n - 2, 0)):
        gd.append(gd[-1].diff("x"))
    phi = ders[n] * _exp(f"2*z{n - 1}" if n > 1 else "2*z", X)
    for k in range(n - 1):
        sign = -1 if k % 2 else 1
        phi = phi + gd[k] * _exp(_zname(n - 2 - k), X) * sign
    comps = {"y": phi}
    for i in range(n + 1):
        comps[_zname(i)] = ders[i]
    return VectorField(X, comps)


def submax_fields(n: int, eps=1) -> List[VectorField]:
    """2n+3 symmetries of y' = (z^(n))^2 + eps^2 (z^(n-1))^2 (n >= 2)."""
    if n < 2:
        raise ValueError("need n >= 2")
    e = Fraction(eps)
    if not e:
        raise ValueError("eps must be nonzero")
    X = monge_variables(n)
    fields = [
        VectorField(X, {"x": 1}),
        VectorField(X, {"y": 1}),
        VectorField(X, {"y": "2*y", **{_zname(i): _zname(i) for i in range(n + 1)}}),
    ]
    hs = [_exp(f"x^{p}" if p else "1", X) for p in range(2 * n - 2)]
    hs += [ExpFunction.exp({"x": e}), ExpFunction.exp({"x": -e})]
    for h in hs:
        fields.append(_shift_field(n, e * e, h, X))
    return fields


FIELD_PRESETS = {
    "w7": w7_fields,
    "submax26": submax26_fields,
    "submax": submax_fields,
}
