import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gapdim import distributions as dg
from gapdim.exact import Polynomial, monomials, parse_expr, solve_in_span
from gapdim.lie import NotClosed, derived_series, jacobi_check
from gapdim.tanaka import tanaka_prolongation, validate_gnla

HC = dg.monge_distribution(dg.hilbert_cartan())
X5 = dg.monge_variables(2)


def field(variables, **coeffs):
    return dg.VectorField(variables, coeffs)


def test_bracket_examples():
    XY = ("x", "y")
    assert dg.lie_bracket(field(XY, x=1), field(XY, y="x")) == field(XY, y=1)
    Dx, dz2 = HC.generators
    assert dg.lie_bracket(dz2, Dx) == field(X5, z1=1, y="2*z2")
    assert dg.lie_bracket(Dx, Dx).is_zero()


def test_bracket_dimension_mismatch():
    with pytest.raises(ValueError):
        dg.lie_bracket(field(("x",), x=1), field(("x", "y"), x=1))


def test_monge_distribution_fields():
    Dx, dz2 = HC.generators
    assert Dx == field(X5, x=1, y="z2^2", z="z1", z1="z2")
    assert dz2 == field(X5, z2=1)
    d7 = dg.monge_distribution(dg.power(2, 3))
    assert d7.ambient_dim == 6 and d7.rank == 2


def test_growth_vectors():
    assert dg.derived_flag(HC, seed=0).dims == [2, 3, 5]
    assert dg.derived_flag(dg.monge_distribution(dg.power(2, 3)), seed=0).dims == [2, 3, 5, 6]
    engel = dg.derived_flag(dg.monge_distribution(dg.power(1, 2)), seed=0)
    assert engel.dims == [2, 3, 4, 4] and not engel.saturated


@pytest.mark.parametrize("eq", [dg.hilbert_cartan(), dg.power(2, 3), dg.power(3, 2), dg.submax26(1), dg.power(1, 2)])
def test_growth_vector_seed_invariant(eq):
    delta = dg.monge_distribution(eq)
    dims = {tuple(dg.derived_flag(delta, seed=s).dims) for s in (0, 7, 123)}
    assert len(dims) == 1


def test_derived_flag_at_given_point():
    pt = {v: Fraction(i + 2, 3) for i, v in enumerate(X5)}
    assert dg.derived_flag(HC, point=pt).dims == [2, 3, 5]


@pytest.mark.parametrize("eq", [dg.hilbert_cartan(), dg.power(2, 3), dg.power(2, 4), dg.submax26(2)])
def test_symbol_matches_growth(eq):
    delta = dg.monge_distribution(eq)
    m = dg.symbol_at_point(delta, seed=3)
    assert validate_gnla(m).valid
    gv = dg.derived_flag(delta, seed=3).dims
    assert m.dims == [b - a for a, b in zip([0] + gv, gv)]


def test_symbol_examples():
    assert dg.symbol_at_point(HC).dims == [2, 1, 2]
    assert dg.symbol_at_point(dg.monge_distribution(dg.power(2, 3))).dims == [2, 1, 2, 1]
    xyz = ("x", "y", "z")
    heis = dg.Distribution([field(xyz, x=1, z="y"), field(xyz, y=1)])
    m = dg.symbol_at_point(heis)
    assert m.dims == [2, 1] and validate_gnla(m).valid


def test_annihilator_hilbert_cartan():
    forms = dg.annihilator(HC)
    # x, y, z, z1, z2
    expected = [
        [parse_expr("-z2^2", X5), 1, 0, 0, 0],
        [parse_expr("-z1", X5), 0, 1, 0, 0],
        [parse_expr("-z2", X5), 0, 0, 1, 0],
    ]
    assert len(forms) == 3
    for w in expected:
        for G in HC.generators:
            assert not dg._pair(w, G)
    for w in forms:
        for G in HC.generators:
            assert not dg._pair(w, G)


def test_annihilator_trivial_cases():
    xy = ("x", "y")
    full = dg.Distribution([field(xy, x=1), field(xy, y=1)])
    assert dg.annihilator(full) == []
    (w,) = dg.annihilator(dg.Distribution([field(xy, x=1)]))
    assert w[0] == 0 and w[1] != 0


def test_is_symmetry_examples():
    w7 = dg.w7_fields(3)
    assert dg.is_symmetry(w7[4], dg.monge_distribution(dg.power(3, 2)))
    w9 = dg.submax26_fields(1)
    assert dg.is_symmetry(w9[7], dg.monge_distribution(dg.submax26(1)))
    assert not dg.is_symmetry(field(X5, z1=1), HC)


@pytest.mark.parametrize("m", [3, 4])
def test_w7_all_symmetries(m):
    delta = dg.monge_distribution(dg.power(m, 2))
    forms = dg.annihilator(delta)
    assert all(dg.is_symmetry(V, delta, forms) for V in dg.w7_fields(m))


@pytest.mark.parametrize("eps", [1, 2])
def test_w9_all_symmetries(eps):
    delta = dg.monge_distribution(dg.submax26(eps))
    forms = dg.annihilator(delta)
    assert all(dg.is_symmetry(V, delta, forms) for V in dg.submax26_fields(eps))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_shift_symmetries(n):
    fields = dg.submax_fields(n)
    delta = dg.monge_distribution(dg.perturbed(n, n - 1, 1))
    forms = dg.annihilator(delta)
    assert all(dg.is_symmetry(V, delta, forms) for V in fields)
    L = dg.structure_constants(fields)
    assert L.dim == 2 * n + 3 and jacobi_check(L).passed
    assert derived_series(L) == [2 * n + 3, 2 * n + 1, 1, 0]


def test_structure_constants_examples():
    L = dg.structure_constants(dg.w7_fields(3))
    assert L.dim == 7 and derived_series(L) == [7, 5, 1, 0]
    assert L.bracket("W1", "W5") == {L.names.index("W3"): 1}
    assert L.bracket("W2", "W7") == {L.names.index("W3"): Fraction(-1, 3)}
    L9 = dg.structure_constants(dg.submax26_fields(1))
    assert L9.dim == 9 and derived_series(L9) == [9, 7, 1, 0]
    L2 = dg.structure_constants([field(("x",), x=1), field(("x",), x="x")])
    assert L2.bracket(0, 1) == {0: 1}


def test_structure_constants_not_closed():
    with pytest.raises(NotClosed):
        dg.structure_constants([field(("x",), x=1), field(("x",), x="x^2")])


def test_polynomial_symmetries_examples():
    assert dg.polynomial_symmetries(dg.Distribution([field(("x",), x=1)]), degree_cap=2).dimension == 3
    assert dg.polynomial_symmetries(dg.monge_distribution(dg.power(3, 2)), degree_cap=5).dimension == 7


def test_polynomial_symmetries_monotone_and_sandwiched():
    bound = tanaka_prolongation(dg.symbol_at_point(HC)).total_dim
    dims = [dg.polynomial_symmetries(HC, degree_cap=c).dimension for c in range(1, 7)]
    assert dims == sorted(dims) and max(dims) <= bound
    assert dims[-1] == 14


def test_polynomial_symmetry_basis_are_symmetries():
    res = dg.polynomial_symmetries(HC, degree_cap=3)
    forms = dg.annihilator(HC)
    assert res.basis and all(dg.is_symmetry(V, HC, forms) for V in res.basis)


# random non-symmetry fields: membership in the cap-2 solution space is the oracle
_CAP2 = dg.polynomial_symmetries(HC, degree_cap=2)
_MONOS = [e for d in range(3) for e in monomials(5, d)]


def _coords(V):
    out = []
    for c in V.rational_coeffs():
        p = c.num.with_variables(X5)
        out.extend(p.terms.get(e, Fraction(0)) / c.den.constant_value() for e in _MONOS)
    return out


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32))
def test_random_fields_are_not_symmetries(seed):
    rng = random.Random(seed)
    comps = {}
    for v in X5:
        terms = rng.sample(_MONOS, 3)
        comps[v] = sum((Polynomial.monomial(X5, e, rng.randint(-5, 5) or 1) for e in terms),
                       Polynomial.constant(0, X5))
    V = dg.VectorField(X5, comps)
    inside = solve_in_span([_coords(W) for W in _CAP2.basis], _coords(V)) is not None
    assert dg.is_symmetry(V, HC) == inside
    assert not inside
