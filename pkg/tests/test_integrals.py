from fractions import Fraction
from itertools import combinations_with_replacement

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gapdim import integrals as gi
from gapdim.exact import parse_expr
from gapdim.symbols import dimension_bound, killing_fibre_dim, killing_symbol, prolongation_sequence

P = gi.MomentumPolynomial


def mp(n, **terms):
    """mp(2, p1p1="x1") style builder: key lists momentum indices."""
    out = {}
    for key, c in terms.items():
        idx = [int(ch) for ch in key.replace("p", "")]
        alpha = tuple(idx.count(i + 1) for i in range(n))
        out[alpha] = parse_expr(str(c), gi.coordinates(n))
    return P(n, out)


def test_hamiltonian_examples():
    assert gi.geodesic_hamiltonian(gi.flat(2)) == mp(2, p11="1/2", p22="1/2")
    assert gi.geodesic_hamiltonian(gi.lemma1(3)) == mp(3, p11="1/x1", p22="1/x1", p33="1/x1")
    q = "(1 + x2^2 + x3^2)^2"
    assert gi.geodesic_hamiltonian(gi.lemma2(3)) == mp(3, p11=1, p22=q, p33=q)


def test_degenerate_metric():
    with pytest.raises(gi.DegenerateMetric):
        gi.Metric([[1, 1], [1, 1]])
    with pytest.raises(ValueError):
        gi.Metric([[1, "x1"], [0, 1]])


def test_poisson_examples():
    p1 = P.momentum(3, 0)
    F = mp(3, p12=2, p33=-5)
    assert not gi.poisson_bracket(p1, F)
    assert not gi.poisson_bracket(gi.geodesic_hamiltonian(gi.flat(3)), p1)
    H = gi.geodesic_hamiltonian(gi.lemma1(2))
    F3 = mp(2, p111="x1*x2", p122="x2^2")
    assert gi.poisson_bracket(H, F3).degree == 4


coeff = st.sampled_from(["1", "x1", "x2", "x1*x2", "x1^2 - 3", "1/(1 + x1^2)", "x2^3/2"])


@st.composite
def momentum_polys(draw, degree):
    monos = list(combinations_with_replacement("12", degree))
    terms = {"p" + "".join(m): draw(coeff) for m in draw(st.lists(st.sampled_from(monos), min_size=1, max_size=3))}
    return mp(2, **terms)


@settings(max_examples=25, deadline=None)
@given(momentum_polys(1), momentum_polys(2), momentum_polys(2))
def test_poisson_antisymmetry_and_jacobi(F, G, K):
    pb = gi.poisson_bracket
    assert pb(F, G) + pb(G, F) == P(2, {}, 2)
    jac = pb(F, pb(G, K)) + pb(G, pb(K, F)) + pb(K, pb(F, G))
    assert not jac


def test_determining_system_counts():
    for n, d, eqs, unknowns in [(3, 2, 10, 6), (2, 1, 3, 2), (2, 3, 5, 4)]:
        s = gi.determining_system(gi.flat(n), d)
        assert len(s.equations) == eqs and len(s.unknowns) == unknowns


@pytest.mark.parametrize("n,d,expected", [(2, 1, 3), (3, 1, 6), (2, 2, 6), (3, 2, 20), (2, 3, 10)])
def test_flat_matches_symbol_oracle(n, d, expected):
    seq = prolongation_sequence(killing_symbol(n, d), cap=8)
    assert dimension_bound(seq, killing_fibre_dim(n, d)) == expected
    assert gi.integral_dimension(gi.flat(n), d) == expected


def test_lemma_examples():
    assert gi.integral_dimension(gi.lemma1(3), 2) == 12
    assert gi.integral_dimension(gi.lemma1(2), 2) == 4
    assert gi.integral_dimension(gi.lemma2(3), 2) == 10


@pytest.mark.parametrize("n", [2, 3])
def test_lemma1_killing_fields(n):
    assert gi.integral_dimension(gi.lemma1(n), 1) == n * (n - 1) // 2


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_seed_invariance(seed):
    assert gi.integral_dimension(gi.lemma1(3), 2, seed=seed) == 12
    assert gi.integral_dimension(gi.lemma2(3), 1, seed=seed) == 4


def test_report_history_and_stopping_rule():
    rep = gi.integral_dimension_report(gi.flat(2), 2)
    L, D, top = rep.history[-1]
    assert D == 6 and top == 0 and rep.history[-2][1] == 6


def test_no_stabilization():
    with pytest.raises(gi.NoStabilization):
        gi.integral_dimension(gi.flat(3), 2, extra_orders=0)


def test_explicit_point_must_be_admissible():
    with pytest.raises(gi.NonGenericPoint):
        gi.integral_dimension_report(gi.lemma1(2), 1, point=[0, 1])


def _lemma2_killing(n, R=1):
    X = gi.coordinates(n)
    R2 = Fraction(R) ** 2
    s = " + ".join(f"x{j}^2" for j in range(2, n + 1))
    fields = [P.momentum(n, 0)]
    for i in range(2, n + 1):
        terms = {}
        for j in range(2, n + 1):
            c = f"2*x{i}*x{j}" + (f" + ({R2}) - ({s})" if i == j else "")
            terms[tuple(int(k == j - 1) for k in range(n))] = parse_expr(c, X)
        fields.append(P(n, terms))
    for i in range(2, n + 1):
        for j in range(i + 1, n + 1):
            fields.append(mp(n, **{f"p{j}": f"x{i}", f"p{i}": f"-x{j}"}))
    return fields


@pytest.mark.parametrize("n", [3, 4])
def test_lemma2_products_of_killing_fields(n):
    g = gi.lemma2(n)
    H = gi.geodesic_hamiltonian(g)
    K = _lemma2_killing(n)
    assert len(K) == 1 + (n - 1) * n // 2
    for a in K:
        assert not gi.poisson_bracket(H, a)
    for a, b in combinations_with_replacement(K, 2):
        assert not gi.poisson_bracket(H, a * b)


def test_negative_curvature_variant():
    g = gi.lemma2(3, c=-1)
    assert gi.integral_dimension(g, 1) == 4


def test_revolution_preset():
    assert gi.integral_dimension(gi.revolution(3, "1"), 1) == 4
    assert gi.integral_dimension(gi.revolution(3, "x1"), 1) == 6
