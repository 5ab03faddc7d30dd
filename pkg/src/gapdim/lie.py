"""Finite-dimensional Lie algebras by structure constants.

Coefficients live in Q (``Fraction``) or in Q(parameters)
(``RationalFunction``); every check is an exact identity, so parametric
claims are verified symbolically.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .exact import Echelon, RationalFunction, parse_expr
from .exact.polynomial import Polynomial

Vector = Dict[int, object]


class NotClosed(ValueError):
    def __init__(self, i, j, detail=""):
        super().__init__(f"bracket of basis elements {i} and {j} leaves the span{detail}")
        self.pair = (i, j)


class NotADerivation(ValueError):
    pass


class NotDiagonalizable(ValueError):
    pass


class IncompatibleFiltration(ValueError):
    pass


class ZeroTrace(ZeroDivisionError):
    pass


def _coeff(value):
    """Normalise a coefficient: ints/strings -> Fraction, constant rational
    functions -> Fraction."""
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        value = parse_expr(value)
    if isinstance(value, Polynomial):
        value = RationalFunction.coerce(value)
    if isinstance(value, RationalFunction) and value.is_constant():
        return value.constant_value()
    return value


def _axpy(out: Vector, a, vec: Mapping):
    if not a:
        return out
    for k, v in vec.items():
        s = out.get(k, 0) + a * v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


class LieAlgebraPresentation:
    """Basis names plus constants c^k_ij, stored for i < j."""

    def __init__(self, names: Sequence[str], brackets: Mapping | None = None):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate basis names")
        self.index = {n: i for i, n in enumerate(self.names)}
        self._table: Dict[Tuple[int, int], Vector] = {}
        self.antisymmetry_violations: List[Tuple[int, int]] = []
        for (a, b), value in (brackets or {}).items():
            i, j = self._idx(a), self._idx(b)
            vec = self._vec(value)
            if i == j:
                if vec:
                    self.antisymmetry_violations.append((i, j))
                continue
            if i > j:
                i, j = j, i
                vec = {k: -v for k, v in vec.items()}
            if (i, j) in self._table and self._table[(i, j)] != vec:
                self.antisymmetry_violations.append((i, j))
                continue
            if vec:
                self._table[(i, j)] = vec

    def _idx(self, a) -> int:
        if isinstance(a, int):
            if not 0 <= a < len(self.names):
                raise IndexError(f"basis index {a} out of range")
            return a
        try:
            return self.index[a]
        except KeyError:
            raise KeyError(f"unknown basis element {a!r}") from None

    def _vec(self, value) -> Vector:
        if isinstance(value, Mapping):
            out = {}
            for k, v in value.items():
                v = _coeff(v)
                if v:
                    out[self._idx(k)] = v
            return out
        if isinstance(value, str):
            return self._vec({value: 1})
        raise TypeError(f"bracket value must be a mapping or a basis name, got {value!r}")

    @property
    def dim(self) -> int:
        return len(self.names)

    def bracket(self, i, j) -> Vector:
        i, j = self._idx(i), self._idx(j)
        if i == j:
            return {}
        if i < j:
            return dict(self._table.get((i, j), {}))
        return {k: -v for k, v in self._table.get((j, i), {}).items()}

    def bracket_vectors(self, u: Mapping, v: Mapping) -> Vector:
        out: Vector = {}
        for i, a in u.items():
            if not a:
                continue
            for j, b in v.items():
                if b and i != j:
                    _axpy(out, a * b, self.bracket(i, j))
        return out

    def structure_constants(self) -> Dict[Tuple[int, int], Vector]:
        return {k: dict(v) for k, v in self._table.items()}

    def named_brackets(self) -> Dict[Tuple[str, str], Dict[str, object]]:
        return {
            (self.names[i], self.names[j]): {self.names[k]: c for k, c in sorted(v.items())}
            for (i, j), v in sorted(self._table.items())
        }

    def parameters(self) -> Tuple[str, ...]:
        seen = []
        for vec in self._table.values():
            for c in vec.values():
                if isinstance(c, RationalFunction):
                    for v in c.num.used_variables() + c.den.used_variables():
                        if v not in seen:
                            seen.append(v)
        return tuple(seen)

    def is_parametric(self) -> bool:
        return bool(self.parameters())

    def specialize(self, values: Mapping[str, object]) -> "LieAlgebraPresentation":
        table = {}
        for (i, j), vec in self._table.items():
            table[(i, j)] = {
                k: (c.substitute(values) if isinstance(c, RationalFunction) else c) for k, c in vec.items()
            }
        return LieAlgebraPresentation(self.names, table)

    def ad(self, x) -> List[List]:
        """Matrix of ad(x) (columns = images of basis vectors); x an index,
        name or coefficient mapping."""
        if not isinstance(x, Mapping):
            x = {self._idx(x): Fraction(1)}
        else:
            x = {self._idx(k): _coeff(v) for k, v in x.items()}
        n = self.dim
        M = [[Fraction(0)] * n for _ in range(n)]
        for j in range(n):
            img = self.bracket_vectors(x, {j: Fraction(1)})
            for i, c in img.items():
                M[i][j] = c
        return M

    def change_basis(self, new_basis: Sequence[Mapping], names: Sequence[str]) -> "LieAlgebraPresentation":
        """Presentation in the basis f_a = sum_k new_basis[a][k] e_k."""
        vecs = [{self._idx(k): _coeff(v) for k, v in b.items()} for b in new_basis]
        if len(vecs) != self.dim:
            raise ValueError("new basis must have dim elements")
        table = {}
        for a, b in combinations(range(self.dim), 2):
            br = self.bracket_vectors(vecs[a], vecs[b])
            coords = express_in_basis(vecs, br, self.dim)
            if coords is None:
                raise ValueError("new basis is not a basis")
            table[(a, b)] = coords
        return LieAlgebraPresentation(names, table)

    def same_constants(self, other: "LieAlgebraPresentation") -> bool:
        if self.dim != other.dim:
            return False
        for i, j in combinations(range(self.dim), 2):
            a, b = self.bracket(i, j), other.bracket(i, j)
            if set(a) | set(b):
                for k in set(a) | set(b):
                    if a.get(k, 0) != b.get(k, 0):
                        return False
        return True

    def __repr__(self):
        return f"LieAlgebraPresentation(dim={self.dim}, names={list(self.names)})"


def _field_echelon(vectors) -> Echelon:
    rational = all(isinstance(c, (int, Fraction)) for v in vectors for c in v.values())
    return Echelon(exact_rational=rational)


def express_in_basis(basis: Sequence[Mapping], target: Mapping, dim: int) -> Optional[Vector]:
    """Coefficients of ``target`` in terms of ``basis`` (sparse vectors in an
    ambient space of size ``dim``), or None if it is not in the span."""
    k = len(basis)
    rows: Dict[int, Dict[int, object]] = {}
    for a, vec in enumerate(basis):
        for i, c in vec.items():
            if c:
                rows.setdefault(i, {})[a] = c
    for i, c in target.items():
        if c:
            rows.setdefault(i, {})[k] = -c
    ech = _field_echelon(list(rows.values()))
    ech.extend(rows.values())
    if k in ech.rows:
        return None
    free = [c for c in range(k) if c not in ech.rows]
    # particular solution: set the target column to 1, free unknowns to 0
    v = {k: Fraction(1)}
    for c in sorted(ech.rows, reverse=True):
        p = ech.rows[c]
        s = 0
        for j, a in p.items():
            if j != c and j in v:
                s = s + a * v[j]
        if s:
            v[c] = -s / p[c]
    if free and any(f in v for f in free):
        raise AssertionError("free column assigned")
    return {a: v[a] for a in range(k) if a in v and v[a]}


def _is_rational_value(c) -> bool:
    return isinstance(c, (int, Fraction))


def _echelon_for(vectors) -> Echelon:
    return Echelon(exact_rational=all(_is_rational_value(c) for v in vectors for c in v.values()))


def _span(vectors: Sequence[Mapping]) -> List[Vector]:
    """Echelon basis of the span of sparse vectors."""
    vectors = [v for v in vectors if v]
    if not vectors:
        return []
    ech = _echelon_for(vectors).extend(vectors)
    return [row for _, row in sorted(ech.reduced_rows().items())]


def _unit(i: int) -> Vector:
    return {i: Fraction(1)}


# ----------------------------------------------------------------------
# Jacobi identity


@dataclass
class JacobiReport:
    residuals: List[Tuple[str, str, str, Dict[str, object]]]

    @property
    def passed(self) -> bool:
        return not self.residuals

    def __bool__(self):
        return self.passed


def jacobi_residuals(L: LieAlgebraPresentation):
    """Nonzero cyclic sums [x,[y,z]] + [y,[z,x]] + [z,[x,y]] over basis triples,
    as (i, j, k, residual vector)."""
    out = []
    for i, j, k in combinations(range(L.dim), 3):
        res: Vector = {}
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            for idx, coeff in L.bracket(b, c).items():
                _axpy(res, coeff, L.bracket(a, idx))
        if res:
            out.append((i, j, k, res))
    return out


def jacobi_check(L: LieAlgebraPresentation) -> JacobiReport:
    if L.antisymmetry_violations:
        pairs = [(L.names[i], L.names[j]) for i, j in L.antisymmetry_violations]
        raise ValueError(f"antisymmetry violated for {pairs}")
    n = L.names
    return JacobiReport(
        [(n[i], n[j], n[k], {n[t]: v for t, v in res.items()}) for i, j, k, res in jacobi_residuals(L)]
    )


# ----------------------------------------------------------------------
# series and centre


def bracket_span(L: LieAlgebraPresentation, A: Sequence[Mapping], B: Sequence[Mapping]) -> List[Vector]:
    return _span([L.bracket_vectors(u, v) for u in A for v in B])


def derived_series(L: LieAlgebraPresentation) -> List[int]:
    """dims of L, [L,L], [[L,L],[L,L]], ... until the dimension stops changing."""
    current = [_unit(i) for i in range(L.dim)]
    dims = [len(current)]
    while current:
        nxt = bracket_span(L, current, current)
        if len(nxt) == len(current):
            break
        current = nxt
        dims.append(len(current))
    return dims


def derived_subalgebra(L: LieAlgebraPresentation) -> List[Vector]:
    full = [_unit(i) for i in range(L.dim)]
    return bracket_span(L, full, full)


def lower_central_series(L: LieAlgebraPresentation) -> List[int]:
    full = [_unit(i) for i in range(L.dim)]
    current = full
    dims = [len(current)]
    while current:
        nxt = bracket_span(L, full, current)
        if len(nxt) == len(current):
            break
        current = nxt
        dims.append(len(current))
    return dims


def center(L: LieAlgebraPresentation) -> int:
    """dim of {x : [x, e_j] = 0 for all j}."""
    rows = []
    for j in range(L.dim):
        for k in range(L.dim):
            row = {}
            for i in range(L.dim):
                c = L.bracket(i, j).get(k)
                if c:
                    row[i] = c
            if row:
                rows.append(row)
    ech = _echelon_for(rows).extend(rows)
    return L.dim - ech.rank


# ----------------------------------------------------------------------
# endomorphisms


def endomorphism(L: LieAlgebraPresentation, terms: Mapping) -> List[List]:
    """Matrix from tensor terms {(target, source): c}, i.e. sum c e_target (x) theta_source."""
    n = L.dim
    M = [[Fraction(0)] * n for _ in range(n)]
    for (t, s), c in terms.items():
        M[L._idx(t)][L._idx(s)] = M[L._idx(t)][L._idx(s)] + _coeff(c)
    return M


def _as_matrix(L: LieAlgebraPresentation, D) -> List[List]:
    if isinstance(D, Mapping) and all(isinstance(k, tuple) for k in D):
        return endomorphism(L, D)
    if isinstance(D, (str, int)) or isinstance(D, Mapping):
        return L.ad(D)
    M = [[_coeff(c) for c in row] for row in D]
    if len(M) != L.dim or any(len(r) != L.dim for r in M):
        raise ValueError(f"endomorphism must be {L.dim}x{L.dim}")
    return M


def _apply(M, vec: Mapping) -> Vector:
    out: Vector = {}
    for j, a in vec.items():
        for i in range(len(M)):
            if M[i][j]:
                _axpy(out, a, {i: M[i][j]})
    return out


def _column(M, j) -> Vector:
    return {i: M[i][j] for i in range(len(M)) if M[i][j]}


def derivation_residuals(L: LieAlgebraPresentation, D) -> List[Tuple[str, str]]:
    """Basis pairs where D[X,Y] != [DX,Y] + [X,DY]."""
    M = _as_matrix(L, D)
    bad = []
    for i, j in combinations(range(L.dim), 2):
        lhs = _apply(M, L.bracket(i, j))
        rhs = L.bracket_vectors(_column(M, i), _unit(j))
        _axpy(rhs, 1, L.bracket_vectors(_unit(i), _column(M, j)))
        _axpy(lhs, -1, rhs)
        if lhs:
            bad.append((L.names[i], L.names[j]))
    return bad


def is_derivation(D, L: LieAlgebraPresentation) -> bool:
    return not derivation_residuals(L, D)


def extend_by_derivation(L: LieAlgebraPresentation, D, name: str) -> LieAlgebraPresentation:
    """Semidirect extension L + R.E with [E, X] = D(X)."""
    bad = derivation_residuals(L, D)
    if bad:
        raise NotADerivation(f"derivation identity fails on {bad}")
    M = _as_matrix(L, D)
    n = L.dim
    table = dict(L.structure_constants())
    for j in range(n):
        col = _column(M, j)
        if col:
            # [X_j, E] = -D(X_j)
            table[(j, n)] = {i: -c for i, c in col.items()}
    return LieAlgebraPresentation(tuple(L.names) + (name,), table)


def grading_derivation(L: LieAlgebraPresentation, degrees: Mapping) -> List[List]:
    """Diagonal map X -> deg(X) X (a derivation iff the degrees grade L)."""
    n = L.dim
    M = [[Fraction(0)] * n for _ in range(n)]
    for k, d in degrees.items():
        i = L._idx(k)
        M[i][i] = Fraction(d)
    return M


# ----------------------------------------------------------------------
# characteristic polynomial and spectra

T_VAR = "t"


def _mat_mul(A, B):
    n, m, p = len(A), len(B), len(B[0]) if B else 0
    out = [[Fraction(0)] * p for _ in range(n)]
    for i in range(n):
        for k in range(m):
            a = A[i][k]
            if a:
                row = B[k]
                for j in range(p):
                    if row[j]:
                        out[i][j] = out[i][j] + a * row[j]
    return out


def _trace(A):
    s = Fraction(0)
    for i in range(len(A)):
        s = s + A[i][i]
    return _coeff(s) if not isinstance(s, Fraction) else s


def characteristic_coefficients(A) -> List:
    """Coefficients c_0..c_n of det(t I - A) by Faddeev-LeVerrier (c_n = 1)."""
    n = len(A)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    M = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        AM = _mat_mul(A, M) if k > 1 else [[Fraction(0)] * n for _ in range(n)]
        M = [[AM[i][j] + (coeffs[n - k + 1] if i == j else 0) for j in range(n)] for i in range(n)]
        coeffs[n - k] = _coeff(-_trace(_mat_mul(A, M)) / k)
    return coeffs


def characteristic_polynomial(A, var: str = T_VAR) -> RationalFunction:
    t = RationalFunction.var(var)
    out = RationalFunction.constant(0)
    for k, c in enumerate(characteristic_coefficients(A)):
        if c:
            out = out + t ** k * c
    return out


def restrict(L: LieAlgebraPresentation, A, subspace: Sequence) -> List[List]:
    """Matrix of A on an invariant subspace, in the given subspace basis
    (basis names, indices or coefficient mappings)."""
    M = _as_matrix(L, A)
    basis = []
    for b in subspace:
        if isinstance(b, Mapping):
            basis.append({L._idx(k): _coeff(v) for k, v in b.items()})
        else:
            basis.append(_unit(L._idx(b)))
    k = len(basis)
    R = [[Fraction(0)] * k for _ in range(k)]
    for j, b in enumerate(basis):
        coords = express_in_basis(basis, _apply(M, b), L.dim)
        if coords is None:
            raise ValueError("subspace is not invariant under the endomorphism")
        for i, c in coords.items():
            R[i][j] = _coeff(c)
    return R


@dataclass
class SpectrumInvariants:
    lam: object
    J: object
    charpoly: RationalFunction
    trace2: object
    trace4: object
    matrix: List[List] = field(repr=False, default_factory=list)


def ad_spectrum_invariants(L: LieAlgebraPresentation, A, subspace: Sequence) -> SpectrumInvariants:
    """lambda = Tr(A^4)/Tr(A^2)^2 and J = 2(1 - 2 lambda), traces over ``subspace``."""
    R = restrict(L, A, subspace)
    R2 = _mat_mul(R, R)
    tr2 = _trace(R2)
    tr4 = _trace(_mat_mul(R2, R2))
    if not tr2:
        raise ZeroTrace("Tr(A^2) vanishes on the subspace")
    lam = _coeff(tr4 / (tr2 * tr2))
    J = _coeff(2 * (1 - 2 * lam))
    return SpectrumInvariants(lam, J, characteristic_polynomial(R), tr2, tr4, R)


def _sympy_roots(charpoly: RationalFunction, var: str):
    """Linear factors of the characteristic polynomial over Q(parameters):
    returns (roots with multiplicity, has_nonlinear_factor)."""
    import sympy

    params = [v for v in charpoly.num.used_variables() if v != var]
    t = sympy.Symbol(var)
    syms = [sympy.Symbol(p) for p in params]
    expr = sympy.sympify(str(charpoly.num).replace("^", "**"), locals={p: s for p, s in zip(params, syms)} | {var: t})
    domain = sympy.QQ.frac_field(*syms) if syms else sympy.QQ
    _, factors = sympy.Poly(expr, t, domain=domain).factor_list()
    roots, nonlinear = [], False
    for f, mult in factors:
        if f.degree() == 1:
            a, b = f.all_coeffs()
            roots.append((str(sympy.together(-b.as_expr() / a.as_expr()) if syms else -b / a), mult))
        else:
            nonlinear = True
    return roots, nonlinear


@dataclass
class GradingReport:
    eigenspaces: Dict[object, List[Vector]]
    violations: List[Tuple[object, object]]
    convention: str = "negative degrees on the nilpotent part"

    @property
    def graded(self) -> bool:
        return not self.violations

    def degrees(self) -> Dict[object, int]:
        return {ev: len(vs) for ev, vs in self.eigenspaces.items()}


def _kernel(M, n):
    rows = [{j: M[i][j] for j in range(n) if M[i][j]} for i in range(n)]
    ech = _echelon_for(rows).extend(rows)
    return ech.kernel_basis(range(n))


def grading_by_element(L: LieAlgebraPresentation, Z, subspace: Optional[Sequence] = None) -> GradingReport:
    """Eigenspace decomposition of ad(Z) (or of an endomorphism), on a
    subspace invariant under it (default: all of L)."""
    if subspace is None:
        subspace = list(L.names)
    R = restrict(L, Z, subspace)
    k = len(R)
    cp = characteristic_polynomial(R)
    roots, nonlinear = _sympy_roots(cp, T_VAR)
    if nonlinear:
        raise NotDiagonalizable("characteristic polynomial has non-rational eigenvalues")
    basis = []
    for b in subspace:
        basis.append({L._idx(k2): _coeff(v) for k2, v in b.items()} if isinstance(b, Mapping) else _unit(L._idx(b)))
    eigenspaces: Dict[object, List[Vector]] = {}
    for text, mult in roots:
        mu = _coeff(text)
        shifted = [[R[i][j] - (mu if i == j else 0) for j in range(k)] for i in range(k)]
        ker = _kernel(shifted, k)
        if len(ker) != mult:
            raise NotDiagonalizable(f"eigenvalue {text} has multiplicity {mult} but {len(ker)} eigenvectors")
        vecs = []
        for v in ker:
            w: Vector = {}
            for j, c in v.items():
                _axpy(w, c, basis[j])
            vecs.append(w)
        eigenspaces[mu] = vecs
    violations = []
    keys = list(eigenspaces)
    for a in keys:
        for b in keys:
            target = a + b
            for u in eigenspaces[a]:
                for v in eigenspaces[b]:
                    br = L.bracket_vectors(u, v)
                    if not br:
                        continue
                    if target not in eigenspaces or express_in_basis(eigenspaces[target], br, L.dim) is None:
                        violations.append((a, b))
    return GradingReport(eigenspaces, sorted(set(violations), key=str))


# ----------------------------------------------------------------------
# cohomology


def _sort_sign(items):
    """Sign of the permutation sorting ``items`` (distinct), and the sorted tuple."""
    items = list(items)
    sign = 1
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            if items[i] > items[j]:
                sign = -sign
    return sign, tuple(sorted(items))


def ce_differential_rows(L: LieAlgebraPresentation, k: int):
    """Rows of d_k : Hom(L^k L, L) -> Hom(L^{k+1} L, L), keyed by (T, s);
    columns are (S, t) for the cochain e_t (x) theta_S."""
    n = L.dim
    rows = []
    for T in combinations(range(n), k + 1):
        block: Dict[int, Dict] = {}

        def add(s, col, val):
            r = block.setdefault(s, {})
            v = r.get(col, 0) + val
            if v:
                r[col] = v
            else:
                r.pop(col, None)

        for i, x in enumerate(T):
            S = T[:i] + T[i + 1:]
            sign = -1 if i % 2 else 1
            for t in range(n):
                for s, c in L.bracket(x, t).items():
                    add(s, (S, t), sign * c)
        for i, j in combinations(range(k + 1), 2):
            rest = T[:i] + T[i + 1:j] + T[j + 1:]
            sign = -1 if (i + j) % 2 else 1
            for l, c in L.bracket(T[i], T[j]).items():
                if l in rest:
                    continue
                perm_sign, S = _sort_sign((l,) + rest)
                for t in range(n):
                    add(t, (S, t), sign * perm_sign * c)
        rows.extend(r for r in block.values() if r)
    return rows


def _ce_rank(L, k) -> int:
    if k < 0 or k >= L.dim:
        return 0
    return Echelon().extend(ce_differential_rows(L, k)).rank


def cochain_dim(L: LieAlgebraPresentation, k: int) -> int:
    return comb(L.dim, k) * L.dim if 0 <= k <= L.dim else 0


def chevalley_eilenberg(L: LieAlgebraPresentation, k: int) -> int:
    """dim H^k(L, L) with adjoint coefficients, by exact ranks."""
    if k < 0:
        raise ValueError("degree must be non-negative")
    if L.is_parametric():
        raise ValueError(f"specialise the parameters {L.parameters()} before computing cohomology")
    return cochain_dim(L, k) - _ce_rank(L, k) - _ce_rank(L, k - 1)


# ----------------------------------------------------------------------
# filtrations


@dataclass
class FilteredBasis:
    """Integer weight per basis element; F_i = span{e : w(e) <= i}."""

    weights: Dict[str, int]


def filtration_violations(L: LieAlgebraPresentation, f: FilteredBasis):
    w = [f.weights[name] for name in L.names]
    bad = []
    for (i, j), vec in L.structure_constants().items():
        for k in vec:
            if w[k] > w[i] + w[j]:
                bad.append((L.names[i], L.names[j], L.names[k]))
    return bad


def associated_graded(L: LieAlgebraPresentation, f: FilteredBasis) -> LieAlgebraPresentation:
    missing = [n for n in L.names if n not in f.weights]
    if missing:
        raise ValueError(f"no weight for {missing}")
    bad = filtration_violations(L, f)
    if bad:
        raise IncompatibleFiltration(f"brackets raise the weight: {bad}")
    w = [f.weights[name] for name in L.names]
    table = {}
    for (i, j), vec in L.structure_constants().items():
        top = {k: c for k, c in vec.items() if w[k] == w[i] + w[j]}
        if top:
            table[(i, j)] = top
    gr = LieAlgebraPresentation(L.names, table)
    if jacobi_residuals(gr):
        raise AssertionError("associated graded algebra fails Jacobi")
    return gr


# ----------------------------------------------------------------------
# presets
#
# Parameters default to symbols; pass a number to specialise.


def _param(value, name: str):
    if value is None:
        return RationalFunction.var(name)
    return _coeff(value)


def abelian(n: int) -> LieAlgebraPresentation:
    return LieAlgebraPresentation([f"e{i}" for i in range(1, n + 1)], {})


def heisenberg(dim: int) -> LieAlgebraPresentation:
    if dim < 3 or dim % 2 == 0:
        raise ValueError("Heisenberg dimension must be odd and >= 3")
    k = (dim - 1) // 2
    names = [f"p{i}" for i in range(1, k + 1)] + [f"q{i}" for i in range(1, k + 1)] + ["z"]
    return LieAlgebraPresentation(names, {(f"p{i}", f"q{i}"): "z" for i in range(1, k + 1)})


def sl2() -> LieAlgebraPresentation:
    return LieAlgebraPresentation(["h", "e", "f"], {("h", "e"): {"e": 2}, ("h", "f"): {"f": -2}, ("e", "f"): "h"})


def cartan7(I=None) -> LieAlgebraPresentation:
    """Seven-dimensional algebra in the basis dual to Cartan's coframe."""
    I = _param(I, "I")
    return LieAlgebraPresentation(
        ["X1", "X2", "X3", "X4", "X5", "Y1", "Y2"],
        {
            ("X1", "Y1"): {"X1": 2},
            ("X2", "Y2"): "X1",
            ("X3", "X4"): "X1",
            ("X2", "Y1"): "X2",
            ("X3", "Y1"): "X3",
            ("X4", "Y1"): "X4",
            ("Y2", "Y1"): "Y2",
            ("X2", "X5"): {"X3": I, "Y2": 1},
            ("X3", "X5"): {"X2": 1, "X4": Fraction(4, 3) * I},
            ("X4", "X5"): {"X3": 1, "Y2": -I},
            ("X5", "Y2"): "X4",
        },
    )


W7_NAMES = ["W1", "W2", "W3", "W4", "W5", "W6", "W7"]
H5_DEGREES = {"W1": -1, "W2": -1, "W5": -1, "W7": -1, "W3": -2}


def w7_heisenberg(m=None) -> LieAlgebraPresentation:
    """h = <W1, W2, W5, W7 | W3>, [W1,W5] = W3, [W2,W7] = -1/m W3."""
    m = _param(m, "m")
    return LieAlgebraPresentation(["W1", "W2", "W3", "W5", "W7"], {("W1", "W5"): "W3", ("W2", "W7"): {"W3": -1 / m}})


def w7_minus_ad_w6(h_tilde: LieAlgebraPresentation, m=None):
    """-ad(W6) = m W2 (x) th2 + W3 (x) th3 + W5 (x) th5 + (1-m) W7 (x) th7."""
    m = _param(m, "m")
    return endomorphism(h_tilde, {("W2", "W2"): m, ("W3", "W3"): 1, ("W5", "W5"): 1, ("W7", "W7"): 1 - m})


def w7_tower(m=None):
    """(h, h~ = h + R W4, the 7-dimensional algebra) built by extensions.

    The extension by D = -ad(W6) introduces E with [E, X] = D(X), so
    E = -W6; the last step rescales E to W6.
    """
    h = w7_heisenberg(m)
    h_tilde = extend_by_derivation(h, grading_derivation(h, H5_DEGREES), "W4")
    g = extend_by_derivation(h_tilde, w7_minus_ad_w6(h_tilde, m), "E")
    basis = [{"W1": 1}, {"W2": 1}, {"W3": 1}, {"W4": 1}, {"W5": 1}, {"E": -1}, {"W7": 1}]
    return h, h_tilde, g.change_basis(basis, W7_NAMES)


def w7(m=None) -> LieAlgebraPresentation:
    """Symmetry algebra of y' = (z'')^m in the W basis (m != 1/2)."""
    return w7_tower(m)[2]


def w7_half() -> LieAlgebraPresentation:
    """The exceptional m = 1/2 algebra: -ad(W6) acquires W2 (x) th7."""
    h = w7_heisenberg(Fraction(1, 2))
    h_tilde = extend_by_derivation(h, grading_derivation(h, H5_DEGREES), "W4")
    D = endomorphism(
        h_tilde,
        {("W2", "W2"): Fraction(1, 2), ("W3", "W3"): 1, ("W5", "W5"): 1,
         ("W7", "W7"): Fraction(1, 2), ("W2", "W7"): Fraction(1, 2)},
    )
    g = extend_by_derivation(h_tilde, D, "E")
    basis = [{"W1": 1}, {"W2": 1}, {"W3": 1}, {"W4": 1}, {"W5": 1}, {"E": -1}, {"W7": 1}]
    return g.change_basis(basis, W7_NAMES)


W9_NAMES = ["W1", "W2", "W3", "W4", "W5", "W6", "W7", "W8", "W9"]
H7_DEGREES = {"W3": -1, "W5": -1, "W6": -1, "W7": -1, "W8": -1, "W9": -1, "W2": -2}


def submax9_heisenberg(eps=None) -> LieAlgebraPresentation:
    e = _param(eps, "e")
    return LieAlgebraPresentation(
        ["W2", "W3", "W5", "W6", "W7", "W8", "W9"],
        {
            ("W3", "W7"): {"W2": -2 * e ** 2},
            ("W5", "W6"): {"W2": 2 * e ** 2},
            ("W6", "W7"): {"W2": 2},
            ("W8", "W9"): {"W2": -4 * e ** 5},
        },
    )


def submax9_w1_derivation(base: LieAlgebraPresentation, eps=None):
    """W1 = W3 (x) th5 + W5 (x) th6 + W6 (x) th7 - e W8 (x) th8 + e W9 (x) th9."""
    e = _param(eps, "e")
    return endomorphism(
        base, {("W3", "W5"): 1, ("W5", "W6"): 1, ("W6", "W7"): 1, ("W8", "W8"): -e, ("W9", "W9"): e}
    )


def submax9_tower(eps=None):
    """(h, 8-dimensional base h + R W4, the 9-dimensional algebra)."""
    h = submax9_heisenberg(eps)
    base = extend_by_derivation(h, grading_derivation(h, H7_DEGREES), "W4")
    g = extend_by_derivation(base, submax9_w1_derivation(base, eps), "W1")
    basis = [{n: 1} for n in W9_NAMES]
    return h, base, g.change_basis(basis, W9_NAMES)


def submax9(eps=None) -> LieAlgebraPresentation:
    """Symmetry algebra of y' = (z''')^2 + e^2 (z'')^2."""
    return submax9_tower(eps)[2]


THEOREM6_NAMES = ["Z0", "Y0", "Z1", "Z2", "S0", "Z3", "S1", "R", "Z4", "S2", "Z5"]
THEOREM6_DEGREES = {"Z0": -4, "Y0": -3, "Z1": -3, "Z2": -2, "S0": -1, "Z3": -1,
                    "S1": 0, "R": 0, "Z4": 0, "S2": 1, "Z5": 1}


def theorem6_11() -> LieAlgebraPresentation:
    """Graded 11-dimensional symmetry algebra of y' = (z''')^2."""
    br: Dict = {
        ("S0", "S1"): "S0",
        ("S0", "S2"): {"S1": 2},
        ("S1", "S2"): "S2",
        ("Z0", "Z5"): {"Y0": 2},
        ("Z1", "Z4"): {"Y0": -2},
        ("Z2", "Z3"): {"Y0": 2},
        ("Y0", "R"): "Y0",
    }
    for i in range(6):
        z = f"Z{i}"
        if i > 0:
            br[("S0", z)] = f"Z{i - 1}"
        br[("S1", z)] = {z: Fraction(2 * i - 5, 2)}
        if i < 5:
            br[("S2", z)] = {f"Z{i + 1}": (i + 1) * (i - 5)}
        br[(z, "R")] = {z: Fraction(1, 2)}
    return LieAlgebraPresentation(THEOREM6_NAMES, br)


PRESETS = {
    "abelian": abelian,
    "heisenberg": heisenberg,
    "sl2": sl2,
    "cartan7": cartan7,
    "w7": w7,
    "w7_half": w7_half,
    "submax9": submax9,
    "theorem6_11": theorem6_11,
}


def preset(name: str, *args) -> LieAlgebraPresentation:
    try:
        factory = PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown Lie algebra preset {name!r}; known: {sorted(PRESETS)}") from None
    return factory(*args)


# ----------------------------------------------------------------------
# invariant relations for the seven-dimensional family


def _rf(text: str, variables=()):
    return RationalFunction.coerce(parse_expr(text, variables))


J_CLOSED_FORM = "(1-2*m)^2/(1-2*m+2*m^2)^2"
I2_OF_K = "(k^2+1)^2/((k^2-9)*(1/9-k^2))"
I2_OF_M = "-(1-2*m+2*m^2)^2/(4*(m+1)*(m-1/3)*(m-2/3)*(m-2))"


@dataclass
class RelationReport:
    checks: Dict[str, object]

    @property
    def passed(self) -> bool:
        return all(v is True or v == 0 for v in self.checks.values())

    def failures(self) -> List[str]:
        return [k for k, v in self.checks.items() if not (v is True or v == 0)]


def _sub(f: RationalFunction, var: str, value) -> RationalFunction:
    return f.substitute({var: value})


def verify_invariant_relations() -> RelationReport:
    """Exact identities among the invariants J, I^2 and the parameters m, k = 2m - 1.

    Differences are returned as rational functions (0 means the identity holds).
    """
    m = RationalFunction.var("m")
    k = RationalFunction.var("k")
    J_m = _rf(J_CLOSED_FORM, ["m"])
    I2_k = _rf(I2_OF_K, ["k"])
    I2_m = _rf(I2_OF_M, ["m"])
    checks: Dict[str, object] = {}

    # J computed from the algebra itself
    g = w7()
    inv = ad_spectrum_invariants(g, {"W6": 1, "W4": Fraction(-1, 2)}, ["W1", "W2", "W5", "W7"])
    checks["J(algebra) - J(m)"] = RationalFunction.coerce(inv.J) - J_m
    t = RationalFunction.var("t")
    half = Fraction(1, 2)
    expected_cp = (t * t - Fraction(1, 4)) * (t * t - (half - m) ** 2)
    checks["charpoly(A) - (t^2-1/4)(t^2-(1/2-m)^2)"] = inv.charpoly - expected_cp

    # J = 9/25 (1 + I^-2) with k = 2m - 1
    I2_sub = _sub(I2_k, "k", 2 * m - 1)
    checks["J(m) - 9/25(1 + 1/I^2(2m-1))"] = J_m - Fraction(9, 25) * (1 + 1 / I2_sub)
    checks["I^2(2m-1) - I^2(m)"] = I2_sub - I2_m
    checks["I^2(k) - I^2(1/k)"] = I2_k - _sub(I2_k, "k", 1 / k)
    checks["I^2(k) - I^2(-k)"] = I2_k - _sub(I2_k, "k", -k)
    poles = [Fraction(3), Fraction(-3), Fraction(1, 3), Fraction(-1, 3)]
    checks["poles of I^2 at k = +-3, +-1/3"] = all(I2_k.den.evaluate({"k": p}) == 0 for p in poles) and \
        I2_k.den.total_degree() == 4
    # k = 2m - 1 in {+-1/3, +-3} <=> m in {2/3, 1/3, 2, -1}
    checks["exceptional m map to poles"] = all(
        I2_m.den.evaluate({"m": v}) == 0 for v in (Fraction(2, 3), Fraction(1, 3), Fraction(2), Fraction(-1))
    )

    # Jordan block at m = 1/2
    try:
        grading_by_element(w7_half(), {"W6": 1, "W4": Fraction(-1, 2)}, ["W1", "W2", "W5", "W7"])
        checks["A not semisimple at m = 1/2"] = False
    except NotDiagonalizable:
        checks["A not semisimple at m = 1/2"] = True
    return RelationReport(checks)


def cartan_basis_invariant(I=None) -> SpectrumInvariants:
    """Invariants of ad(X5) on <X2, X3, X4, Y2> in the Cartan basis."""
    return ad_spectrum_invariants(cartan7(I), "X5", ["X2", "X3", "X4", "Y2"])
