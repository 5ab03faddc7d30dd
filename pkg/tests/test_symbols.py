from math import comb

import pytest

from gapdim.symbols import (
    NotFiniteType,
    affine_sequence,
    co,
    dimension_bound,
    full_space,
    gl,
    killing_symbol,
    prolong,
    prolongation_sequence,
    so,
)


def test_prolong_examples():
    assert so(3).dim == 3 and prolong(so(3)).dim == 0
    assert prolong(gl(2)).dim == 6
    assert co(3).dim == 4 and prolong(co(3)).dim == 3


def test_sequence_examples():
    seq = prolongation_sequence(co(3), cap=10)
    assert seq.dims == [4, 3, 0] and seq.terminated
    seq = prolongation_sequence(so(4), cap=10)
    assert seq.dims == [6, 0] and seq.terminated
    seq = prolongation_sequence(gl(2), cap=4)
    assert seq.dims == [4, 6, 8, 10] and seq.capped and not seq.terminated
    assert seq.status == "possibly infinite type"


def test_cap_must_be_positive():
    with pytest.raises(ValueError):
        prolongation_sequence(so(3), cap=0)


def test_killing_symbol_examples():
    assert killing_symbol(3, 2).dim == 8
    assert killing_symbol(2, 1).dim == 1
    assert killing_symbol(2, 3).dim == 3


@pytest.mark.parametrize("n", range(2, 7))
def test_killing_symbol_closed_forms(n):
    assert killing_symbol(n, 1).dim == n * (n - 1) // 2
    assert killing_symbol(n, 2).dim == n * (n * n - 1) // 3
    for d in (1, 2, 3):
        assert killing_symbol(n, d).dim == n * comb(n + d - 1, d) - comb(n + d, d + 1)


@pytest.mark.parametrize("n", range(2, 6))
def test_killing2_chain(n):
    seq = prolongation_sequence(killing_symbol(n, 2), cap=6)
    assert seq.dims == [n * (n * n - 1) // 3, n * n * (n * n - 1) // 12, 0]


def test_dimension_bound_examples():
    assert dimension_bound(prolongation_sequence(so(3)), 3) == 6
    assert dimension_bound(prolongation_sequence(killing_symbol(3, 2)), 6) == 20
    assert dimension_bound(prolongation_sequence(co(3)), 3) == 10


def test_dimension_bound_refuses_capped():
    with pytest.raises(NotFiniteType):
        dimension_bound(prolongation_sequence(gl(2), cap=3), 2)
    with pytest.raises(NotFiniteType):
        dimension_bound([4, 6], 2)


@pytest.mark.parametrize("n", range(2, 6))
def test_affine_input_sequence(n):
    assert dimension_bound(affine_sequence(n), n) == n + n * n
    assert dimension_bound([n * n, 0], n) == n + n * n


@pytest.mark.parametrize("n,w,k", [(1, 1, 1), (2, 1, 2), (2, 2, 1), (3, 1, 1), (2, 3, 2), (3, 2, 2), (2, 1, 4)])
def test_full_space_prolongs_to_full(n, w, k):
    g = prolong(full_space(n, w, k))
    assert g.dim == comb(n + k, k + 1) * w


@pytest.mark.parametrize("g", [so(3), co(3), gl(2), killing_symbol(2, 2), killing_symbol(3, 1)])
def test_prolongation_dim_bounded_by_contractions(g):
    assert prolong(g).dim <= g.dim * g.n


def test_basis_is_independent_and_inside():
    g = co(4)
    assert len(g.basis) == g.dim
    assert all(g.contains(v) for v in g.basis)
