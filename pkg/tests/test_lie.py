from fractions import Fraction

import pytest

from gapdim import distributions as dg
from gapdim import lie
from gapdim.exact import RationalFunction, parse_expr
from gapdim.tanaka import free_235

H_MINUS_1 = ["W1", "W2", "W5", "W7"]
A_TERMS = {"W6": 1, "W4": Fraction(-1, 2)}


def test_jacobi_examples():
    assert lie.jacobi_check(lie.w7()).passed
    assert lie.jacobi_check(lie.cartan7()).passed
    assert lie.jacobi_check(lie.sl2()).passed
    br = lie.sl2().named_brackets()
    br[("e", "f")] = {"h": 1, "e": 1}
    assert not lie.jacobi_check(lie.LieAlgebraPresentation(["h", "e", "f"], br)).passed


def test_perturbed_constant_reported():
    br = lie.w7(3).named_brackets()
    key = ("W1", "W4")
    vec = dict(br.get(key, {}))
    vec["W1"] = vec.get("W1", 0) + 1
    br[key] = vec
    rep = lie.jacobi_check(lie.LieAlgebraPresentation(lie.W7_NAMES, br))
    assert not rep.passed and rep.residuals


@pytest.mark.parametrize("L", [lie.w7(), lie.cartan7(), lie.submax9(), lie.theorem6_11(), lie.w7_half()])
def test_witness_algebras_are_lie(L):
    assert lie.jacobi_check(L).passed


def test_series_examples():
    assert lie.derived_series(lie.w7(3)) == [7, 5, 1, 0]
    assert lie.derived_series(lie.submax9(1)) == [9, 7, 1, 0]
    h5 = lie.heisenberg(5)
    assert lie.derived_series(h5) == [5, 1, 0] and lie.center(h5) == 1
    assert lie.lower_central_series(h5) == [5, 1, 0]
    assert lie.derived_series(lie.sl2()) == [3]


def test_symbolic_series_match_specialised():
    assert lie.derived_series(lie.w7()) == [7, 5, 1, 0]
    assert lie.derived_series(lie.submax9()) == [9, 7, 1, 0]


def test_grading_examples():
    rep = lie.grading_by_element(lie.w7(3), "W4", ["W1", "W2", "W3", "W5", "W7"])
    assert rep.graded and rep.degrees() == {-1: 4, -2: 1}
    m = free_235().algebra
    ext = lie.extend_by_derivation(m, lie.grading_derivation(m, dict(zip(m.names, free_235().degrees))), "Z")
    rep = lie.grading_by_element(ext, "Z", list(m.names))
    assert rep.degrees() == {-1: 2, -2: 1, -3: 2} and rep.graded
    with pytest.raises(lie.NotDiagonalizable):
        lie.grading_by_element(lie.w7_half(), A_TERMS, H_MINUS_1)


def test_spectrum_at_m3():
    inv = lie.ad_spectrum_invariants(lie.w7(3), A_TERMS, H_MINUS_1)
    assert inv.J == Fraction(25, 169)
    rep = lie.grading_by_element(lie.w7(3), A_TERMS, H_MINUS_1)
    assert sorted(rep.degrees()) == [Fraction(-5, 2), Fraction(-1, 2), Fraction(1, 2), Fraction(5, 2)]
    closed = parse_expr(lie.J_CLOSED_FORM, ["m"])
    assert RationalFunction.coerce(closed).substitute({"m": 3}) == inv.J


def test_spectrum_symbolic_and_trivial():
    inv = lie.ad_spectrum_invariants(lie.w7(), A_TERMS, H_MINUS_1)
    assert RationalFunction.coerce(inv.J) == RationalFunction.coerce(parse_expr(lie.J_CLOSED_FORM, ["m"]))
    L = lie.abelian(4)
    ident = [[Fraction(int(i == j)) for j in range(4)] for i in range(4)]
    inv = lie.ad_spectrum_invariants(L, ident, list(L.names))
    assert inv.lam == Fraction(1, 4) and inv.J == 1
    with pytest.raises(lie.ZeroTrace):
        h = lie.heisenberg(3)
        lie.ad_spectrum_invariants(h, "p1", list(h.names))


def test_spectrum_requires_invariant_subspace():
    with pytest.raises(ValueError):
        lie.ad_spectrum_invariants(lie.w7(3), "W1", ["W5"])


def test_invariant_relations():
    rep = lie.verify_invariant_relations()
    assert rep.passed, {k: str(v) for k, v in rep.checks.items() if not (v is True or v == 0)}


def test_cartan_basis_invariant():
    inv = lie.cartan_basis_invariant()
    I = RationalFunction.var("I")
    assert RationalFunction.coerce(inv.J) == Fraction(9, 25) * (1 + 1 / (I * I))


def test_cohomology_examples():
    assert lie.chevalley_eilenberg(lie.abelian(1), 2) == 0
    assert lie.chevalley_eilenberg(lie.sl2(), 2) == 0
    assert lie.chevalley_eilenberg(lie.abelian(2), 2) == 2
    with pytest.raises(ValueError):
        lie.chevalley_eilenberg(lie.w7(), 1)


@pytest.mark.parametrize("L", [lie.sl2(), lie.abelian(2), lie.heisenberg(3), lie.w7(3),
                               lie.LieAlgebraPresentation(["a", "b"], {("a", "b"): "a"})])
def test_euler_characteristic(L):
    n = L.dim
    chi_c = sum((-1) ** k * lie.cochain_dim(L, k) for k in range(n + 1))
    chi_h = sum((-1) ** k * lie.chevalley_eilenberg(L, k) for k in range(n + 1))
    assert chi_c == chi_h


def test_derivation_examples():
    L = lie.w7(3)
    for x in L.names:
        assert lie.is_derivation(x, L)
    h, h_tilde, g = lie.w7_tower()
    assert lie.is_derivation(lie.w7_minus_ad_w6(h_tilde), h_tilde)
    assert g.same_constants(lie.w7())
    h, base, g9 = lie.submax9_tower()
    assert lie.is_derivation(lie.submax9_w1_derivation(base), base)
    with pytest.raises(lie.NotADerivation):
        lie.extend_by_derivation(lie.heisenberg(3), lie.endomorphism(lie.heisenberg(3), {("p1", "p1"): 1}), "E")


def test_double_extensions_match_fields():
    A = dg.structure_constants(dg.w7_fields(3), lie.W7_NAMES)
    assert A.same_constants(lie.w7_tower(3)[2])
    B = dg.structure_constants(dg.submax26_fields(1), lie.W9_NAMES)
    assert B.same_constants(lie.submax9_tower(1)[2])


def test_associated_graded_examples():
    L = lie.w7(3)
    weights = {"W1": -1, "W2": -1, "W5": -1, "W7": -1, "W3": -2, "W4": 0, "W6": 0}
    gr = lie.associated_graded(L, lie.FilteredBasis(weights))
    assert gr.same_constants(L)
    neg = [n for n in L.names if weights[n] < 0]
    sub = lie.LieAlgebraPresentation(neg, {
        (a, b): {c: v for c, v in gr.named_brackets().get((a, b), {}).items() if c in neg}
        for a in neg for b in neg if neg.index(a) < neg.index(b)
    })
    assert sub.dim == 5 and lie.derived_series(sub) == [5, 1, 0] and lie.center(sub) == 1
    L2 = lie.LieAlgebraPresentation(["e1", "e2"], {("e1", "e2"): "e1"})
    gr2 = lie.associated_graded(L2, lie.FilteredBasis({"e1": 1, "e2": 1}))
    assert gr2.bracket(0, 1) == {}
    with pytest.raises(lie.IncompatibleFiltration):
        lie.associated_graded(L2, lie.FilteredBasis({"e1": 1, "e2": -1}))


def test_theorem6_levi_decomposition():
    L = lie.theorem6_11()
    assert lie.jacobi_check(L).passed
    assert lie.derived_series(L) == [11, 10]
    # sl2-triple e = S0, h = -2 S1, f = -S2
    e, h, f = {"S0": 1}, {"S1": -2}, {"S2": -1}
    idx = lambda v: {L.names.index(k): Fraction(c) for k, c in v.items()}
    br = lambda a, b: L.bracket_vectors(idx(a), idx(b))
    assert br(h, e) == {k: 2 * c for k, c in idx(e).items()}
    assert br(h, f) == {k: -2 * c for k, c in idx(f).items()}
    assert br(e, f) == idx(h)
    # the complement <Z0..Z5, Y0, R> is a solvable ideal of dimension 8
    rad_names = [f"Z{i}" for i in range(6)] + ["Y0", "R"]
    rad = [{L.names.index(n): Fraction(1)} for n in rad_names]
    full = [{i: Fraction(1)} for i in range(L.dim)]
    assert lie._span(rad + lie.bracket_span(L, full, rad)) == lie._span(rad)
    level, dims = rad, [8]
    while level:
        level = lie.bracket_span(L, level, level)
        dims.append(len(level))
    assert dims == [8, 7, 1, 0]
