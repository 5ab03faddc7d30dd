"""Symbol spaces g_k in S^k T* (x) W and their algebraic prolongations.

Coordinates on S^k T* (x) W are pairs (sigma, a): sigma a multi-index with
|sigma| = k (the coefficient of x^sigma) and a a fibre index.  The formal
contraction delta_i is the partial derivative d/dx_i in these coordinates,
so it has integer entries.

A space is stored by a set of linear equations cutting it out (rows of its
annihilator).  Prolongation only has to differentiate the equations, and a
basis is produced on demand as a kernel.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from .exact import Echelon
from .exact.polynomial import monomials


class NotFiniteType(ValueError):
    """The prolongation sequence was capped before reaching zero."""


@dataclass(frozen=True)
class _Layout:
    n: int
    w: int
    k: int

    @cached_property
    def multi_indices(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(monomials(self.n, self.k))

    @cached_property
    def position(self) -> Dict[Tuple[int, ...], int]:
        return {s: i for i, s in enumerate(self.multi_indices)}

    @property
    def size(self) -> int:
        return len(self.multi_indices) * self.w

    def index(self, sigma, a) -> int:
        return self.position[tuple(sigma)] * self.w + a


def ambient_dim(n: int, w: int, k: int) -> int:
    return comb(n + k - 1, k) * w


class SymbolSpace:
    """Subspace g of S^k T* (x) W, with dim T = n and dim W = w."""

    def __init__(self, n: int, w: int, k: int, *, basis=None, equations=None, name: str = ""):
        if (basis is None) == (equations is None):
            raise ValueError("give exactly one of basis or equations")
        self.n, self.w, self.k = n, w, k
        self.name = name
        self._layout = _Layout(n, w, k)
        if basis is not None:
            basis = [list(map(Fraction, v)) for v in basis]
            for v in basis:
                if len(v) != self.ambient:
                    raise ValueError(f"basis vector of length {len(v)}, expected {self.ambient}")
            ech = Echelon().extend({j: x for j, x in enumerate(v) if x} for v in basis)
            if ech.rank != len(basis):
                raise ValueError("basis vectors are linearly dependent")
            self._basis = basis
            # equations = annihilator of the span
            ann = Echelon().extend(
                {i: v[i] for i in range(self.ambient) if v[i]} for v in basis
            ).kernel_basis(range(self.ambient))
            self._equations = _reduced(ann)
        else:
            self._equations = _reduced(equations)
            self._basis = None

    @property
    def ambient(self) -> int:
        return self._layout.size

    @property
    def equations(self) -> List[Dict[int, int]]:
        return self._equations

    @property
    def dim(self) -> int:
        return self.ambient - len(self._equations)

    @property
    def basis(self) -> List[List[Fraction]]:
        if self._basis is None:
            ech = Echelon().extend(self._equations)
            ker = ech.kernel_basis(range(self.ambient))
            self._basis = [[v.get(j, Fraction(0)) for j in range(self.ambient)] for v in ker]
        return self._basis

    def contains(self, vector: Sequence) -> bool:
        return all(sum(c * vector[j] for j, c in eq.items()) == 0 for eq in self._equations)

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"SymbolSpace{label}(n={self.n}, w={self.w}, k={self.k}, dim={self.dim})"


def _reduced(rows) -> List[Dict[int, int]]:
    ech = Echelon()
    for r in rows:
        if isinstance(r, dict):
            ech.add(r)
        else:
            ech.add({j: x for j, x in enumerate(r) if x})
    return [ech.rows[c] for c in sorted(ech.rows)]


def contraction(layout: _Layout, i: int, sigma, a):
    """delta_i applied to the basis vector (sigma, a) of order k+1: returns
    (index in order-k layout, factor) or None."""
    if sigma[i] == 0:
        return None
    lower = list(sigma)
    lower[i] -= 1
    return layout.index(lower, a), sigma[i]


def prolong(g: SymbolSpace) -> SymbolSpace:
    """First algebraic prolongation g^(1) = (g (x) T*) ∩ S^{k+1}T* (x) W.

    u lies in g^(1) iff every contraction delta_i u lies in g, i.e. every
    equation of g vanishes on every delta_i u.
    """
    n, w, k = g.n, g.w, g.k
    low = g._layout
    high = _Layout(n, w, k + 1)
    # transposed contraction: for each order-k coordinate, which order-(k+1)
    # coordinates map onto it (per direction i)
    lift: List[Dict[int, List[Tuple[int, int]]]] = [dict() for _ in range(n)]
    for sigma in high.multi_indices:
        for a in range(w):
            col = high.index(sigma, a)
            for i in range(n):
                hit = contraction(low, i, sigma, a)
                if hit is not None:
                    lift[i].setdefault(hit[0], []).append((col, hit[1]))
    rows = []
    for eq in g.equations:
        for i in range(n):
            row: Dict[int, int] = {}
            for j, c in eq.items():
                for col, factor in lift[i].get(j, ()):
                    row[col] = row.get(col, 0) + c * factor
            row = {j: v for j, v in row.items() if v}
            if row:
                rows.append(row)
    return SymbolSpace(n, w, k + 1, equations=rows, name=f"{g.name}^(1)" if g.name else "")


@dataclass
class SymbolSequence:
    spaces: List[SymbolSpace]
    terminated: bool
    capped: bool = False

    @property
    def dims(self) -> List[int]:
        return [s.dim for s in self.spaces]

    @property
    def status(self) -> str:
        return "terminated" if self.terminated else "possibly infinite type"


def prolongation_sequence(g: SymbolSpace, cap: int = 10) -> SymbolSequence:
    """g, g^(1), g^(2), ... until a zero space or ``cap`` spaces listed."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    spaces = [g]
    while spaces[-1].dim > 0 and len(spaces) < cap:
        spaces.append(prolong(spaces[-1]))
    done = spaces[-1].dim == 0
    return SymbolSequence(spaces, terminated=done, capped=not done)


def dimension_bound(seq, g0_dim: int) -> int:
    """g0_dim + sum of dims in a terminated sequence (finite-type bound).

    ``seq`` may be a SymbolSequence or a plain list of dims given as input
    (whose last entry must be 0)."""
    if isinstance(seq, SymbolSequence):
        if not seq.terminated:
            raise NotFiniteType(f"sequence capped at dims {seq.dims}")
        dims = seq.dims
    else:
        dims = list(seq)
        if not dims or dims[-1] != 0:
            raise NotFiniteType(f"given sequence {dims} does not end in a zero space")
    return g0_dim + sum(dims)


# -- presets ------------------------------------------------------------

def _matrix_space(n: int, matrices, name: str) -> SymbolSpace:
    """Space in T* (x) T from n x n matrices A (u = sum A[a][i] x_i e_a)."""
    layout = _Layout(n, n, 1)
    basis = []
    for A in matrices:
        v = [Fraction(0)] * layout.size
        for a in range(n):
            for i in range(n):
                if A[a][i]:
                    sigma = tuple(1 if j == i else 0 for j in range(n))
                    v[layout.index(sigma, a)] = Fraction(A[a][i])
        basis.append(v)
    return SymbolSpace(n, n, 1, basis=basis, name=name)


def _unit(n, a, b, value=1):
    A = [[0] * n for _ in range(n)]
    A[a][b] = value
    return A


def so(n: int) -> SymbolSpace:
    mats = []
    for a in range(n):
        for b in range(a + 1, n):
            A = _unit(n, a, b)
            A[b][a] = -1
            mats.append(A)
    return _matrix_space(n, mats, f"so({n})")


def co(n: int) -> SymbolSpace:
    mats = [[[1 if i == j else 0 for j in range(n)] for i in range(n)]]
    for a in range(n):
        for b in range(a + 1, n):
            A = _unit(n, a, b)
            A[b][a] = -1
            mats.append(A)
    return _matrix_space(n, mats, f"co({n})")


def gl(n: int) -> SymbolSpace:
    return _matrix_space(n, [_unit(n, a, b) for a in range(n) for b in range(n)], f"gl({n})")


def sl(n: int) -> SymbolSpace:
    mats = [_unit(n, a, b) for a in range(n) for b in range(n) if a != b]
    for a in range(n - 1):
        A = _unit(n, a, a)
        A[a + 1][a + 1] = -1
        mats.append(A)
    return _matrix_space(n, mats, f"sl({n})")


def full_space(n: int, w: int, k: int) -> SymbolSpace:
    return SymbolSpace(n, w, k, equations=[], name=f"S^{k}T*(x)R^{w}")


def zero_space(n: int, w: int, k: int) -> SymbolSpace:
    size = ambient_dim(n, w, k)
    return SymbolSpace(n, w, k, equations=[{j: 1} for j in range(size)], name="0")


def killing_symbol(n: int, d: int) -> SymbolSpace:
    """Order-1 symbol of the Killing d-tensor equation, W = S^d T.

    It is the kernel of the symmetrisation T* (x) S^d T -> S^{d+1} T; in
    momentum-monomial coordinates, (e_i, p^a) maps to p^(a + e_i).
    """
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    fibre = list(monomials(n, d))
    w = len(fibre)
    layout = _Layout(n, w, 1)
    target = {m: r for r, m in enumerate(monomials(n, d + 1))}
    rows: Dict[int, Dict[int, int]] = {}
    for i in range(n):
        sigma = tuple(1 if j == i else 0 for j in range(n))
        for a, mono in enumerate(fibre):
            up = tuple(m + (1 if j == i else 0) for j, m in enumerate(mono))
            rows.setdefault(target[up], {})[layout.index(sigma, a)] = 1
    return SymbolSpace(n, w, 1, equations=list(rows.values()), name=f"killing({n},{d})")


def killing_fibre_dim(n: int, d: int) -> int:
    return comb(n + d - 1, d)


def affine_sequence(n: int) -> SymbolSequence:
    """Affine-connection Lie equation: g1 = gl(n), g2 = 0 (second order
    equation, supplied as input rather than prolonged)."""
    return SymbolSequence([gl(n), zero_space(n, n, 2)], terminated=True)


PRESETS = {
    "so": so,
    "co": co,
    "gl": gl,
    "sl": sl,
    "killing": killing_symbol,
}


def preset(name: str, *args) -> SymbolSpace:
    try:
        factory = PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown symbol preset {name!r}; known: {sorted(PRESETS)}") from None
    return factory(*args)


def preset_g0_dim(name: str, *args) -> int:
    """dim g_0 (the fibre W) that pairs with a preset in the dimension bound."""
    if name == "killing":
        return killing_fibre_dim(*args)
    return args[0]
