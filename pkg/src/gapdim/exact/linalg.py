"""Exact sparse linear algebra over Q and over fields of rational functions.

The workhorse is :class:`Echelon`, an incrementally built row-echelon form.
Rows are sparse dicts ``column -> value``; column keys can be anything
totally ordered (ints, tuples).  Each stored row has as pivot its smallest
column, and no two rows share a pivot.  Consequences used elsewhere:

* ``rank`` is the number of stored rows;
* the rank of the column block ``{c : c < bound}`` is the number of pivots
  below ``bound`` (used for top-order symbol ranks in jet systems).

Over Q rows are kept as primitive integer vectors and eliminated
fraction-free (cross multiplication followed by content removal).
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd, lcm
from typing import Dict, Hashable, Iterable, List, Mapping, Sequence

from .ratfunc import RationalFunction


def is_rational_scalar(x) -> bool:
    return isinstance(x, (int, Fraction))


def _int_row(row: Mapping) -> Dict:
    """Scale a rational row to a primitive integer row with positive leading entry."""
    items = [(k, v) for k, v in row.items() if v]
    if not items:
        return {}
    den = lcm(*(Fraction(v).denominator for _, v in items))
    out = {k: int(Fraction(v) * den) for k, v in items}
    return _primitive(out)


def _primitive(row: Dict) -> Dict:
    g = gcd(*row.values())
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g != 1:
        row = {k: v // g for k, v in row.items()}
    return row


class Echelon:
    """Incremental sparse row echelon form.

    ``field=None`` selects the fraction-free integer mode (inputs must be
    ints or Fractions); otherwise rows hold field elements supporting
    ``+ - * /`` and truthiness (Fraction, RationalFunction).
    """

    def __init__(self, exact_rational: bool = True):
        self.rational = exact_rational
        self.rows: Dict[Hashable, Dict] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def pivots(self):
        return sorted(self.rows)

    def reduce(self, row: Mapping) -> Dict:
        """Reduce ``row`` against the stored pivots (does not store it)."""
        if self.rational:
            row = _int_row(row)
        else:
            row = {k: v for k, v in row.items() if v}
        if not row:
            return row
        heap = list(row)
        heapq.heapify(heap)
        rows = self.rows
        while heap:
            c = heapq.heappop(heap)
            a = row.get(c)
            if a is None:
                continue
            p = rows.get(c)
            if p is None:
                continue
            if self.rational:
                b = p[c]
                g = gcd(a, b)
                fa, fb = b // g, a // g
                if fa != 1:
                    if fa == -1:
                        row = {k: -v for k, v in row.items()}
                    else:
                        row = {k: v * fa for k, v in row.items()}
                for j, v in p.items():
                    cur = row.get(j)
                    if cur is None:
                        row[j] = -fb * v
                        heapq.heappush(heap, j)
                    else:
                        s = cur - fb * v
                        if s:
                            row[j] = s
                        else:
                            del row[j]
                if row:
                    row = _primitive(row)
            else:
                # stored field rows have pivot entry 1
                for j, v in p.items():
                    cur = row.get(j)
                    if cur is None:
                        row[j] = -a * v
                        heapq.heappush(heap, j)
                    else:
                        s = cur - a * v
                        if s:
                            row[j] = s
                        else:
                            del row[j]
        return row

    def add(self, row: Mapping) -> bool:
        """Insert a row; return True if it increased the rank."""
        row = self.reduce(row)
        if not row:
            return False
        c = min(row)
        if not self.rational:
            inv = row[c]
            row = {k: v / inv for k, v in row.items()}
        self.rows[c] = row
        return True

    def extend(self, rows: Iterable[Mapping]) -> "Echelon":
        for r in rows:
            self.add(r)
        return self

    def contains(self, row: Mapping) -> bool:
        return not self.reduce(row)

    def rank_below(self, bound) -> int:
        return sum(1 for c in self.rows if c < bound)

    def kernel_basis(self, columns: Sequence[Hashable]) -> List[Dict]:
        """Basis of the null space, one vector per free column (value 1 there)."""
        free = [c for c in columns if c not in self.rows]
        order = sorted(self.rows, reverse=True)
        basis = []
        for f in free:
            v = {f: Fraction(1) if self.rational else 1}
            for c in order:
                p = self.rows[c]
                s = 0
                for j, a in p.items():
                    if j != c:
                        x = v.get(j)
                        if x is not None:
                            s = s + a * x
                if s:
                    v[c] = -s / p[c] if self.rational else -s
            basis.append(v)
        return basis

    def reduced_rows(self) -> Dict[Hashable, Dict]:
        """Reduced row echelon form (pivot entry 1, pivot columns cleared)."""
        out: Dict[Hashable, Dict] = {}
        for c in sorted(self.rows, reverse=True):
            p = self.rows[c]
            lead = p[c]
            row = {k: (Fraction(v, lead) if self.rational else v / lead) for k, v in p.items()}
            for j in [k for k in row if k != c and k in out]:
                a = row.pop(j)
                for k, v in out[j].items():
                    if k == j:
                        continue
                    s = row.get(k, 0) - a * v
                    if s:
                        row[k] = s
                    else:
                        row.pop(k, None)
            out[c] = row
        return out


def _all_rational(values) -> bool:
    return all(is_rational_scalar(v) for v in values)


class ExactMatrix:
    """Sparse exact matrix; zero entries are never stored."""

    __slots__ = ("nrows", "ncols", "entries")

    def __init__(self, nrows: int, ncols: int, entries: Mapping | None = None):
        self.nrows = nrows
        self.ncols = ncols
        self.entries = {}
        for (i, j), v in (entries or {}).items():
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise IndexError(f"entry {(i, j)} outside {nrows}x{ncols}")
            if isinstance(v, int):
                v = Fraction(v)
            if v:
                self.entries[(i, j)] = v

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "ExactMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        entries = {}
        for i, r in enumerate(rows):
            if len(r) != ncols:
                raise ValueError("ragged rows")
            for j, v in enumerate(r):
                if v:
                    entries[(i, j)] = v
        return cls(nrows, ncols, entries)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "ExactMatrix":
        return cls(nrows, ncols)

    def row_dicts(self) -> List[Dict[int, object]]:
        rows: List[Dict[int, object]] = [{} for _ in range(self.nrows)]
        for (i, j), v in self.entries.items():
            rows[i][j] = v
        return rows

    def is_rational(self) -> bool:
        return _all_rational(self.entries.values())

    def __getitem__(self, ij):
        return self.entries.get(ij, Fraction(0))

    def to_lists(self):
        return [[self[i, j] for j in range(self.ncols)] for i in range(self.nrows)]

    def apply(self, vector: Sequence) -> list:
        out = [Fraction(0)] * self.nrows
        for (i, j), v in self.entries.items():
            out[i] = out[i] + v * vector[j]
        return out

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.ncols, self.nrows, {(j, i): v for (i, j), v in self.entries.items()})

    def __eq__(self, other):
        return (
            isinstance(other, ExactMatrix)
            and (self.nrows, self.ncols) == (other.nrows, other.ncols)
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"ExactMatrix({self.nrows}x{self.ncols}, nnz={len(self.entries)})"


def _echelon_of(rows: Sequence[Mapping]) -> Echelon:
    rational = all(_all_rational(r.values()) for r in rows)
    ech = Echelon(exact_rational=rational)
    # sparsest rows first; ties keep the original row order
    order = sorted(range(len(rows)), key=lambda i: (len(rows[i]), i))
    for i in order:
        ech.add(rows[i])
    return ech


def rank(M) -> int:
    rows = M.row_dicts() if isinstance(M, ExactMatrix) else [_as_row(r) for r in M]
    return _echelon_of(rows).rank


def kernel_basis(M: ExactMatrix) -> List[List]:
    """Basis of {v : M v = 0} as dense lists."""
    ech = _echelon_of(M.row_dicts())
    basis = ech.kernel_basis(range(M.ncols))
    zero = Fraction(0)
    return [[v.get(j, zero) for j in range(M.ncols)] for v in basis]


def _as_row(vec) -> Dict[int, object]:
    if isinstance(vec, Mapping):
        return {k: v for k, v in vec.items() if v}
    return {j: v for j, v in enumerate(vec) if v}


def span_basis(vectors: Sequence[Sequence]) -> List[List]:
    """An echelon basis of span(vectors), as dense lists."""
    if not vectors:
        return []
    n = len(vectors[0])
    ech = _echelon_of([_as_row(v) for v in vectors])
    zero = Fraction(0)
    return [[row.get(j, zero) for j in range(n)] for _, row in sorted(ech.reduced_rows().items())]


def subspace_dim(vectors: Sequence[Sequence]) -> int:
    return _echelon_of([_as_row(v) for v in vectors]).rank


def intersect_subspaces(A: Sequence[Sequence], B: Sequence[Sequence]) -> List[List]:
    """Basis of span(A) ∩ span(B) via the kernel of [A | -B]."""
    if not A or not B:
        return []
    n = len(A[0])
    if any(len(v) != n for v in list(A) + list(B)):
        raise ValueError("vectors must share the ambient dimension")
    k = len(A)
    cols = k + len(B)
    entries = {}
    for j, v in enumerate(A):
        for i, x in enumerate(v):
            if x:
                entries[(i, j)] = x
    for j, v in enumerate(B):
        for i, x in enumerate(v):
            if x:
                entries[(i, k + j)] = -x
    ker = kernel_basis(ExactMatrix(n, cols, entries))
    out = []
    for coeffs in ker:
        w = [Fraction(0)] * n
        for j, v in enumerate(A):
            c = coeffs[j]
            if c:
                for i, x in enumerate(v):
                    if x:
                        w[i] = w[i] + c * x
        out.append(w)
    return span_basis(out) if out else []


def solve_in_span(basis: Sequence[Sequence], target: Sequence):
    """Coefficients c with sum c_i basis_i = target, or None if not in the span."""
    n = len(target)
    k = len(basis)
    entries = {}
    for j, v in enumerate(basis):
        for i, x in enumerate(v):
            if x:
                entries[(i, j)] = x
    for i, x in enumerate(target):
        if x:
            entries[(i, k)] = -x
    M = ExactMatrix(n, k + 1, entries)
    for vec in kernel_basis(M):
        if vec[k]:
            scale = vec[k]
            return [c / scale for c in vec[:k]]
    if not any(target):
        return [Fraction(0)] * k
    return None


def determinant(rows: Sequence[Sequence]):
    """Determinant by fraction-free Bareiss elimination (dense, any field)."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    a = [list(r) for r in rows]
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
            a[i][k] = Fraction(0)
        prev = a[k][k]
    return a[n - 1][n - 1] if sign == 1 else -a[n - 1][n - 1]


def rational_field_matrix(rows: Sequence[Sequence]) -> List[List]:
    """Promote a matrix to RationalFunction entries (for mixed inputs)."""
    return [[RationalFunction.coerce(v) for v in r] for r in rows]
