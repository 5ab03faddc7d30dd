"""Graded nilpotent Lie algebras and their Tanaka prolongations.

A non-negative element u of degree k is stored as a map on the basis of m:
``u[X]`` is a sparse coordinate vector of u(X) in the component of degree
k + deg X (the basis of m itself when that degree is negative, the computed
basis of g_{k+deg X} otherwise).  Coordinates are local to a component.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .exact import Echelon
from .lie import LieAlgebraPresentation, NotClosed, express_in_basis, jacobi_residuals
from .symbols import NotFiniteType

DEFAULT_CAP = 12


class NotFundamental(ValueError):
    pass


class PrescribedG0NotDerivations(ValueError):
    pass


class GradedNilpotentAlgebra:
    """m = g_{-depth} + ... + g_{-1} with homogeneous basis and constants.

    ``brackets`` maps pairs of basis names (or indices) to coefficient
    mappings; both orders may be given, inconsistencies are recorded and
    reported by :func:`validate_gnla`.
    """

    def __init__(self, names: Sequence[str], degrees: Sequence[int], brackets: Mapping | None = None):
        if len(names) != len(degrees):
            raise ValueError("one degree per basis element")
        if any(d >= 0 for d in degrees):
            raise ValueError("degrees of m must be negative")
        self.names = tuple(names)
        self.degrees = tuple(int(d) for d in degrees)
        self.depth = -min(self.degrees) if self.degrees else 0
        self.algebra = LieAlgebraPresentation(self.names, brackets or {})
        self.by_degree: Dict[int, List[int]] = {}
        for i, d in enumerate(self.degrees):
            self.by_degree.setdefault(d, []).append(i)
        self.local = {i: self.by_degree[d].index(i) for i, d in enumerate(self.degrees)}

    @classmethod
    def from_dims(cls, dims: Sequence[int], brackets: Mapping, prefix: str = "e") -> "GradedNilpotentAlgebra":
        """dims listed from degree -1 downwards; names e1, e2, ..."""
        names, degrees = [], []
        for depth, d in enumerate(dims, start=1):
            for _ in range(d):
                names.append(f"{prefix}{len(names) + 1}")
                degrees.append(-depth)
        return cls(names, degrees, brackets)

    @property
    def dims(self) -> List[int]:
        """Component dims from degree -1 down to -depth."""
        return [len(self.by_degree.get(-i, [])) for i in range(1, self.depth + 1)]

    @property
    def dim(self) -> int:
        return len(self.names)

    def bracket(self, i: int, j: int) -> Dict[int, Fraction]:
        return self.algebra.bracket(i, j)

    def component(self, degree: int) -> List[int]:
        return self.by_degree.get(degree, [])

    def __repr__(self):
        return f"GradedNilpotentAlgebra(dims={self.dims})"


@dataclass
class ValidationReport:
    valid: bool
    fundamental: bool
    jacobi_residuals: List[Tuple[str, str, str, Dict[str, Fraction]]]
    grading_violations: List[Tuple[str, str, str]]
    antisymmetry_violations: List[Tuple[str, str]]
    generation_defects: Dict[int, int] = field(default_factory=dict)

    def summary(self) -> str:
        if self.valid:
            return "valid GNLA" + (", fundamental" if self.fundamental else ", not fundamental")
        parts = []
        if self.antisymmetry_violations:
            parts.append(f"antisymmetry violated for {self.antisymmetry_violations}")
        if self.jacobi_residuals:
            parts.append(f"{len(self.jacobi_residuals)} nonzero Jacobi residuals")
        if self.grading_violations:
            parts.append(f"grading violated by {self.grading_violations}")
        return "; ".join(parts)


def validate_gnla(m: GradedNilpotentAlgebra) -> ValidationReport:
    names = m.names
    grading = []
    for i, j in combinations(range(m.dim), 2):
        target = m.degrees[i] + m.degrees[j]
        for k in m.bracket(i, j):
            if m.degrees[k] != target:
                grading.append((names[i], names[j], names[k]))
    residuals = [
        (names[i], names[j], names[k], {names[t]: v for t, v in res.items()})
        for i, j, k, res in jacobi_residuals(m.algebra)
    ]
    anti = [(names[i], names[j]) for i, j in m.algebra.antisymmetry_violations]
    defects = generation_defects(m)
    valid = not residuals and not grading and not anti
    return ValidationReport(valid, not defects, residuals, grading, anti, defects)


def generation_defects(m: GradedNilpotentAlgebra) -> Dict[int, int]:
    """For each degree -i-1, how many dimensions [g_{-1}, g_{-i}] misses."""
    defects = {}
    for i in range(1, m.depth):
        target = m.component(-i - 1)
        ech = Echelon()
        for a in m.component(-1):
            for b in m.component(-i):
                ech.add({m.local[k]: v for k, v in m.bracket(a, b).items() if m.degrees[k] == -i - 1})
        if ech.rank < len(target):
            defects[-i - 1] = len(target) - ech.rank
    return defects


# ----------------------------------------------------------------------
# Tanaka prolongation


@dataclass
class TanakaAlgebra:
    m: GradedNilpotentAlgebra
    nonneg: List[List[Dict[int, Dict[int, Fraction]]]]
    status: str  # "terminated" or "capped"

    @property
    def nonneg_dims(self) -> List[int]:
        return [len(c) for c in self.nonneg]

    @property
    def dims(self) -> List[int]:
        """All component dims, from degree -depth up to the last computed."""
        return list(reversed(self.m.dims)) + self.nonneg_dims

    @property
    def negative_dims(self) -> List[int]:
        return self.m.dims

    @property
    def total_dim(self) -> int:
        return self.m.dim + sum(self.nonneg_dims)

    def component_basis(self, degree: int):
        return self.nonneg[degree]

    def assemble(self) -> LieAlgebraPresentation:
        return _assemble(self)


class _Components:
    """Uniform access to graded pieces: negative degrees are slices of m's
    basis, non-negative degrees are the computed prolongation bases."""

    def __init__(self, m: GradedNilpotentAlgebra, nonneg):
        self.m = m
        self.nonneg = nonneg

    def size(self, degree: int) -> int:
        if degree < 0:
            return len(self.m.component(degree))
        if degree < len(self.nonneg):
            return len(self.nonneg[degree])
        return 0

    def bracket_with_m(self, degree: int, b: int, Y: int) -> Dict[int, Fraction]:
        """[f_b, Y] for basis element b of the given degree and Y in m,
        in local coordinates of degree ``degree + deg Y``."""
        m = self.m
        if degree < 0:
            X = m.component(degree)[b]
            return {m.local[k]: v for k, v in m.bracket(X, Y).items()}
        return self.nonneg[degree][b].get(Y, {})


def _derivation_system(m: GradedNilpotentAlgebra, comps: _Components, k: int):
    """Columns (X, b) and rows of the degree-k derivation identity."""
    columns = []
    for X in range(m.dim):
        t = k + m.degrees[X]
        for b in range(comps.size(t)):
            columns.append((X, b))
    colidx = {c: i for i, c in enumerate(columns)}
    rows = []
    for X, Y in combinations(range(m.dim), 2):
        t = k + m.degrees[X] + m.degrees[Y]
        if comps.size(t) == 0:
            continue
        eqs: Dict[int, Dict[int, Fraction]] = {}

        def add(coord, col, val):
            if val:
                row = eqs.setdefault(coord, {})
                s = row.get(col, 0) + val
                if s:
                    row[col] = s
                else:
                    row.pop(col, None)

        # u([X,Y])
        for Z, c in m.bracket(X, Y).items():
            tz = k + m.degrees[Z]
            for b in range(comps.size(tz)):
                # u(Z) coordinate b contributes to coordinate b of degree t
                add(b, colidx[(Z, b)], c)
        # - [u(X), Y]
        tx = k + m.degrees[X]
        for b in range(comps.size(tx)):
            for coord, v in comps.bracket_with_m(tx, b, Y).items():
                add(coord, colidx[(X, b)], -v)
        # - [X, u(Y)] = + [u(Y), X]
        ty = k + m.degrees[Y]
        for b in range(comps.size(ty)):
            for coord, v in comps.bracket_with_m(ty, b, X).items():
                add(coord, colidx[(Y, b)], v)
        rows.extend(r for r in eqs.values() if r)
    return columns, rows


def _vector_to_map(columns, vec: Mapping[int, Fraction]) -> Dict[int, Dict[int, Fraction]]:
    out: Dict[int, Dict[int, Fraction]] = {}
    for i, v in vec.items():
        if v:
            X, b = columns[i]
            out.setdefault(X, {})[b] = Fraction(v)
    return out


def derivation_residual(m: GradedNilpotentAlgebra, comps: _Components, k: int, u) -> int:
    """Number of basis pairs on which u([X,Y]) != [u X, Y] + [X, u Y]."""
    columns, rows = _derivation_system(m, comps, k)
    colidx = {c: i for i, c in enumerate(columns)}
    vec = {}
    for X, coords in u.items():
        for b, v in coords.items():
            vec[colidx[(X, b)]] = v
    return sum(1 for r in rows if sum(c * vec.get(j, 0) for j, c in r.items()) != 0)


def tanaka_prolongation(m: GradedNilpotentAlgebra, g0=None, cap: int = DEFAULT_CAP) -> TanakaAlgebra:
    """Compute g_0, g_1, ... until the first zero component or ``cap``
    non-negative components.

    ``g0`` optionally prescribes a subalgebra of degree-0 derivations, as a
    list of square matrices acting on m's basis (``D[i][j]`` = coefficient of
    e_i in D(e_j)); they must preserve degrees and be derivations.
    """
    report = validate_gnla(m)
    if not report.valid:
        raise ValueError(f"not a graded nilpotent Lie algebra: {report.summary()}")
    if not report.fundamental:
        raise NotFundamental(f"g_-1 does not generate m (defects {report.generation_defects})")
    nonneg: List[List[Dict[int, Dict[int, Fraction]]]] = []
    comps = _Components(m, nonneg)
    k = 0
    status = "capped"
    while k < cap:
        if k == 0 and g0 is not None:
            basis = _prescribed_g0(m, comps, g0)
        else:
            columns, rows = _derivation_system(m, comps, k)
            ech = Echelon().extend(rows)
            basis = [_vector_to_map(columns, v) for v in ech.kernel_basis(range(len(columns)))]
            if k >= 1 and basis:
                _check_restriction_injective(m, basis)
        nonneg.append(basis)
        if not basis:
            status = "terminated"
            break
        k += 1
    return TanakaAlgebra(m, nonneg, status)


def _prescribed_g0(m, comps, g0):
    basis = []
    for D in g0:
        u: Dict[int, Dict[int, Fraction]] = {}
        for j in range(m.dim):
            for i in range(m.dim):
                v = Fraction(D[i][j])
                if v:
                    if m.degrees[i] != m.degrees[j]:
                        raise PrescribedG0NotDerivations(f"{m.names[j]} -> {m.names[i]} changes degree")
                    u.setdefault(j, {})[m.local[i]] = v
        if derivation_residual(m, comps, 0, u):
            raise PrescribedG0NotDerivations("a prescribed element is not a derivation of m")
        basis.append(u)
    # independence
    ech = Echelon()
    for u in basis:
        if not ech.add({(X, b): v for X, c in u.items() for b, v in c.items()}):
            raise PrescribedG0NotDerivations("prescribed g0 elements are linearly dependent")
    return basis


def _check_restriction_injective(m: GradedNilpotentAlgebra, basis):
    ech = Echelon()
    low = set(m.component(-1))
    for u in basis:
        ech.add({(X, b): v for X, c in u.items() if X in low for b, v in c.items()})
    if ech.rank != len(basis):
        raise AssertionError("restriction to g_-1 is not injective; m is not fundamental")


def dimension_certificate(t: TanakaAlgebra) -> int:
    """Upper bound for the symmetry dimension: sum of all component dims."""
    if t.status != "terminated":
        raise NotFiniteType(f"Tanaka prolongation capped with component dims {t.dims}")
    return t.total_dim


def full_derivation_algebra(m: GradedNilpotentAlgebra) -> List[List[List[Fraction]]]:
    """Grading preserving derivations of m as matrices (basis of g_0)."""
    comps = _Components(m, [])
    columns, rows = _derivation_system(m, comps, 0)
    ech = Echelon().extend(rows)
    mats = []
    for vec in ech.kernel_basis(range(len(columns))):
        D = [[Fraction(0)] * m.dim for _ in range(m.dim)]
        for i, v in vec.items():
            X, b = columns[i]
            D[m.component(m.degrees[X])[b]][X] = v
        mats.append(D)
    return mats


# ----------------------------------------------------------------------
# assembling the full graded Lie algebra


def _assemble(t: TanakaAlgebra) -> LieAlgebraPresentation:
    m = t.m
    comps = _Components(m, t.nonneg)
    offsets = {}
    names = list(m.names)
    for k, comp in enumerate(t.nonneg):
        offsets[k] = len(names)
        names.extend(f"g{k}_{i + 1}" for i in range(len(comp)))

    def glob(degree, local_vec):
        if degree < 0:
            comp = m.component(degree)
            return {comp[i]: v for i, v in local_vec.items()}
        return {offsets[degree] + i: v for i, v in local_vec.items()}

    cache: Dict[Tuple[int, int, int, int], Dict[int, Fraction]] = {}

    def nonneg_bracket(k, a, l, b):
        """[u_a, v_b] for u_a in g_k, v_b in g_l, local coords in g_{k+l}."""
        key = (k, a, l, b)
        if key in cache:
            return cache[key]
        image: Dict[Tuple[int, int], Fraction] = {}
        for X in range(m.dim):
            # [u,[v,X]] - [v,[u,X]]
            for (fk, fa), (sk, sb), sign in (((k, a), (l, b), 1), ((l, b), (k, a), -1)):
                first, second = t.nonneg[fk][fa], t.nonneg[sk][sb]
                inner_deg = sk + m.degrees[X]
                for c, coeff in second.get(X, {}).items():
                    if inner_deg < 0:
                        Z = m.component(inner_deg)[c]
                        res = first.get(Z, {})
                    else:
                        res = nonneg_bracket(fk, fa, inner_deg, c)
                    for idx, val in res.items():
                        key2 = (X, idx)
                        s = image.get(key2, 0) + sign * coeff * val
                        if s:
                            image[key2] = s
                        else:
                            image.pop(key2, None)
        target = k + l
        if target >= len(t.nonneg) or not t.nonneg[target]:
            if image:
                raise NotClosed(k, l, " (bracket lands in a vanishing component)")
            cache[key] = {}
            return {}
        basis_vecs = [{(X, i): w for X, c in e.items() for i, w in c.items()} for e in t.nonneg[target]]
        cols = sorted({c for vec in basis_vecs for c in vec} | set(image))
        pos = {c: i for i, c in enumerate(cols)}
        coords = express_in_basis(
            [{pos[c]: w for c, w in vec.items()} for vec in basis_vecs],
            {pos[c]: w for c, w in image.items()},
            len(cols),
        )
        if coords is None:
            raise NotClosed(k, l, " (bracket is not in the computed component)")
        cache[key] = coords
        return coords

    table = {}
    n_m = m.dim
    for (i, j), vec in m.algebra.structure_constants().items():
        table[(i, j)] = vec
    for k, comp in enumerate(t.nonneg):
        for a, u in enumerate(comp):
            ga = offsets[k] + a
            for X in range(n_m):
                img = u.get(X, {})
                if img:
                    # [u, X] = u(X)  ->  store as [X, u] = -u(X)
                    table[(X, ga)] = {g: -w for g, w in glob(k + m.degrees[X], img).items()}
            for l in range(k, len(t.nonneg)):
                for b in range(len(t.nonneg[l])):
                    gb = offsets[l] + b
                    if gb <= ga:
                        continue
                    res = nonneg_bracket(k, a, l, b)
                    if res:
                        table[(ga, gb)] = glob(k + l, res)
    return LieAlgebraPresentation(names, table)


# ----------------------------------------------------------------------
# presets


def heisenberg(dim: int) -> GradedNilpotentAlgebra:
    """Heisenberg algebra of dimension 2k+1: [p_i, q_i] = z."""
    if dim < 3 or dim % 2 == 0:
        raise ValueError("Heisenberg dimension must be odd and >= 3")
    k = (dim - 1) // 2
    names = [f"p{i}" for i in range(1, k + 1)] + [f"q{i}" for i in range(1, k + 1)] + ["z"]
    degrees = [-1] * (2 * k) + [-2]
    brackets = {(f"p{i}", f"q{i}"): {"z": 1} for i in range(1, k + 1)}
    return GradedNilpotentAlgebra(names, degrees, brackets)


def abelian(n: int) -> GradedNilpotentAlgebra:
    return GradedNilpotentAlgebra([f"e{i}" for i in range(1, n + 1)], [-1] * n, {})


def free_235() -> GradedNilpotentAlgebra:
    """Free 3-step nilpotent algebra on two generators, dims (2,1,2)."""
    return GradedNilpotentAlgebra.from_dims(
        [2, 1, 2], {("e1", "e2"): {"e3": 1}, ("e1", "e3"): {"e4": 1}, ("e2", "e3"): {"e5": 1}}
    )


def theorem6_negative() -> GradedNilpotentAlgebra:
    """Negative part of the graded 11-dimensional algebra of the (2,3,5,6)
    maximal model: [S0,Z_i] = Z_{i-1}, [Z2,Z3] = 2 Y0."""
    names = ["S0", "Z3", "Z2", "Y0", "Z1", "Z0"]
    degrees = [-1, -1, -2, -3, -3, -4]
    brackets = {
        ("S0", "Z3"): {"Z2": 1},
        ("S0", "Z2"): {"Z1": 1},
        ("S0", "Z1"): {"Z0": 1},
        ("Z2", "Z3"): {"Y0": 2},
    }
    return GradedNilpotentAlgebra(names, degrees, brackets)


def co_matrices(n: int) -> List[List[List[Fraction]]]:
    """co(n) = R + so(n) as degree-0 derivations of the abelian algebra."""
    mats = [[[Fraction(int(i == j)) for j in range(n)] for i in range(n)]]
    for a in range(n):
        for b in range(a + 1, n):
            D = [[Fraction(0)] * n for _ in range(n)]
            D[a][b] = Fraction(1)
            D[b][a] = Fraction(-1)
            mats.append(D)
    return mats


PRESETS = {
    "free235": free_235,
    "heisenberg": heisenberg,
    "abelian": abelian,
    "theorem6": theorem6_negative,
}


def preset(name: str, *args) -> GradedNilpotentAlgebra:
    try:
        factory = PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown GNLA preset {name!r}; known: {sorted(PRESETS)}") from None
    return factory(*args)
