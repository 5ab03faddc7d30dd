from fractions import Fraction

import pytest

from gapdim import distributions as dg
from gapdim.lie import jacobi_residuals
from gapdim.symbols import NotFiniteType
from gapdim.tanaka import (
    GradedNilpotentAlgebra,
    NotFundamental,
    PrescribedG0NotDerivations,
    _Components,
    abelian,
    co_matrices,
    derivation_residual,
    dimension_certificate,
    free_235,
    full_derivation_algebra,
    heisenberg,
    preset,
    tanaka_prolongation,
    theorem6_negative,
    validate_gnla,
)


def test_validate_examples():
    rep = validate_gnla(heisenberg(3))
    assert rep.valid and rep.fundamental
    assert validate_gnla(free_235()).valid


def test_inconsistent_duplicate_reported():
    m = GradedNilpotentAlgebra(
        ["e1", "e2", "e3", "e4", "e5"], [-1, -1, -2, -3, -3],
        {("e1", "e2"): "e3", ("e1", "e3"): "e4", ("e2", "e3"): "e5", ("e3", "e2"): "e4"},
    )
    rep = validate_gnla(m)
    assert not rep.valid and rep.antisymmetry_violations


def test_jacobi_failure_reported():
    m = GradedNilpotentAlgebra(
        ["a", "b", "c", "ab", "ac", "bc", "t"], [-1, -1, -1, -2, -2, -2, -3],
        {("a", "b"): "ab", ("a", "c"): "ac", ("b", "c"): "bc",
         ("a", "bc"): "t", ("b", "ac"): "t", ("c", "ab"): "t"},
    )
    rep = validate_gnla(m)
    assert not rep.valid and rep.jacobi_residuals
    with pytest.raises(ValueError):
        tanaka_prolongation(m)


def test_not_fundamental():
    m = GradedNilpotentAlgebra(["a", "b", "z"], [-1, -1, -2], {})
    assert not validate_gnla(m).fundamental
    with pytest.raises(NotFundamental):
        tanaka_prolongation(m)


def test_grading_violation():
    m = GradedNilpotentAlgebra(["a", "b", "z"], [-1, -1, -2], {("a", "b"): "a"})
    rep = validate_gnla(m)
    assert not rep.valid and rep.grading_violations


def test_free_235():
    t = tanaka_prolongation(free_235())
    assert t.status == "terminated"
    assert t.dims == [2, 1, 2, 4, 2, 1, 2, 0]
    assert dimension_certificate(t) == 14


def test_free_235_assembles_to_lie_algebra():
    L = tanaka_prolongation(free_235()).assemble()
    assert L.dim == 14
    assert jacobi_residuals(L) == []


def test_theorem6_negative_part():
    m = theorem6_negative()
    assert m.dims == [2, 1, 2, 1]
    t = tanaka_prolongation(m)
    assert t.total_dim == 11 and dimension_certificate(t) == 11


def test_abelian_with_co():
    t = tanaka_prolongation(abelian(3), g0=co_matrices(3))
    assert t.dims == [3, 4, 3, 0] and t.total_dim == 10


def test_heisenberg_capped():
    t = tanaka_prolongation(heisenberg(3), cap=6)
    assert t.status == "capped"
    assert all(d > 0 for d in t.dims)
    with pytest.raises(NotFiniteType):
        dimension_certificate(t)


def test_prescribed_g0_must_be_derivations():
    m = heisenberg(3)
    bad = [[Fraction(int(i == j == 0)) for j in range(3)] for i in range(3)]
    with pytest.raises(PrescribedG0NotDerivations):
        tanaka_prolongation(m, g0=[bad])


@pytest.mark.parametrize("name,args", [("free235", ()), ("theorem6", ()), ("heisenberg", (5,)), ("abelian", (2,))])
def test_prescribed_full_g0_reproduces(name, args):
    m = preset(name, *args)
    a = tanaka_prolongation(m, cap=4)
    b = tanaka_prolongation(m, g0=full_derivation_algebra(m), cap=4)
    assert a.dims == b.dims and a.status == b.status
    assert a.nonneg[0] == b.nonneg[0]


@pytest.mark.parametrize("name", ["free235", "theorem6"])
def test_every_element_is_a_derivation(name):
    t = tanaka_prolongation(preset(name))
    for k, comp in enumerate(t.nonneg):
        comps = _Components(t.m, t.nonneg[:k])
        for u in comp:
            assert derivation_residual(t.m, comps, k, u) == 0


@pytest.mark.parametrize("n", [3, 4])
def test_higher_monge_symbols(n):
    m = dg.symbol_at_point(dg.monge_distribution(dg.power(2, n)), seed=0)
    assert tanaka_prolongation(m).total_dim == 2 * n + 5


def test_hilbert_cartan_symbol_matches_free():
    m = dg.symbol_at_point(dg.monge_distribution(dg.hilbert_cartan()), seed=0)
    assert m.dims == [2, 1, 2]
    assert tanaka_prolongation(m).total_dim == 14
