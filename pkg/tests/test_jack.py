from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given, strategies as st

from ospzhu import jack as J
from ospzhu import partitions as P
from ospzhu.errors import NotAdmissible

pos_t = st.sampled_from([F(1, 3), F(1, 2), F(1), F(2), F(3), F(5, 2)])
small_parts = st.integers(0, 4).flatmap(lambda d: st.sampled_from(P.partitions_of(d)))


def coeffs(p):
    return {mu: c for mu, c in p.coeffs.items()}


def test_frozen_small_jacks():
    # zonal (t = 2) and Schur (t = 1)
    assert coeffs(J.jack_poly((2,), F(2), 2)) == {(2,): 1, (1, 1): F(2, 3)}
    assert coeffs(J.jack_poly((2, 1), F(2), 3)) == {(2, 1): 1, (1, 1, 1): F(3, 2)}
    assert coeffs(J.jack_poly((2, 1), F(1), 3)) == {(2, 1): 1, (1, 1, 1): 2}
    # t = -3, admissible labels
    assert coeffs(J.jack_poly((2, 2), J.MINUS3, 4)) == {(2, 2): 1, (2, 1, 1): -1, (1, 1, 1, 1): 6}
    assert coeffs(J.jack_poly((2, 1), J.MINUS3, 3)) == {(2, 1): 1, (1, 1, 1): -6}


def test_minus_three_requires_admissibility():
    with pytest.raises(NotAdmissible):
        J.jack_poly((1, 1), J.MINUS3, 3)


def test_schur_matches_bialternant():
    n = 3
    xs = sympy.symbols("z1:4")
    for lam in [(2, 1), (3, 1), (2, 2, 1), (3,)]:
        p = P.padded(lam, n)
        num = sympy.Matrix(n, n, lambda i, j: xs[i] ** (p[j] + n - 1 - j)).det()
        den = sympy.Matrix(n, n, lambda i, j: xs[i] ** (n - 1 - j)).det()
        schur = sympy.Poly(sympy.cancel(num / den), *xs)
        mine = J.jack_poly(lam, 1, n).to_mpoly(["z1", "z2", "z3"])
        for exps, c in mine.terms.items():
            assert schur.coeff_monomial(sympy.Mul(*[x ** e for x, e in zip(xs, exps)])) == sympy.Rational(
                c.numerator, c.denominator)
        assert len(schur.terms()) == len(mine.terms)


@given(small_parts, pos_t)
def test_laplace_beltrami_matches_gram_schmidt(lam, t):
    n = max(sum(lam), 1)
    lb = coeffs(J.jack_poly(lam, t, n))
    gs = J.gram_schmidt_jack(lam, t) if lam else {(): 1}
    assert lb == gs


@given(small_parts, pos_t)
def test_formal_parameter_specializes(lam, t):
    n = max(len(lam), 1) + 1
    assert J.specialize(J.jack_poly(lam, J.FORMAL, n), t) == J.jack_poly(lam, t, n)


@pytest.mark.parametrize("k", [1, 2, 3])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_norms_against_constant_term(k, n):
    t = F(1, k)
    for d in range(4):
        lams = P.partitions_of(d, n)
        for a in lams:
            for b in lams:
                got = J.constant_term_oracle(J.jack_poly(a, t, n), J.jack_poly(b, t, n), n, k)
                assert got == (J.jack_norm(a, t, n) if a == b else 0)


def test_norm_frozen():
    assert J.jack_norm((), F(1, 2), 3) == 1
    assert J.jack_norm((1,), 1, 2) == 1
    assert J.jack_norm((2,), F(1, 2), 2) == F(5, 9)
    assert J.jack_norm((2, 1), F(2), 3) == F(25, 12)


@given(st.dictionaries(st.sampled_from(P.partitions_of(3, 3) + P.partitions_of(2, 3)),
                       st.fractions(min_value=-3, max_value=3, max_denominator=4), max_size=4), pos_t)
def test_expand_roundtrip(data, t):
    f = J.SymPoly(3, data)
    assert J.jack_sum(J.jack_expand(f, t, 3)) == f


def test_binomial_coefficient_frozen():
    c = J.binomial_coefficient((2, 1), F(2))
    assert repr(c) == "2/5*lam^3 - 1/5*lam^2 - 1/5*lam"
    # degree-one check by hand: coefficient of m_1 in prod (1 + z_i/w)^lam is lam
    assert J.binomial_coefficient((1,), F(3)).coeffs == (0, 1)


@pytest.mark.parametrize("kappa,n", [((1,), 2), ((2,), 3), ((2, 1), 3), ((2, 2), 3), ((3, 2, 1), 4)])
@pytest.mark.parametrize("t", [F(1, 2), F(2), F(6, 5)])
def test_binomial_pairing_against_series(kappa, n, t):
    poly = J.binomial_pairing(kappa, 1, 0, t, n)
    for lam0 in (F(1, 3), F(-5, 2), F(7)):
        assert poly(lam0) == J.direct_binomial_pairing(kappa, lam0, t, n)


def test_translation_matches_substitution():
    xs = sympy.symbols("z1:4")
    w = sympy.Symbol("w")
    p = J.jack_poly((3, 1), F(1, 2), 3)
    mp = p.to_mpoly(["z1", "z2", "z3"])
    expr = sum(sympy.Rational(c.numerator, c.denominator) * sympy.Mul(*[(x + w) ** e for x, e in zip(xs, exps)])
               for exps, c in mp.terms.items())
    series = sympy.Poly(sympy.expand(expr), w)
    for d, fd in J.translate(p):
        got = fd.to_mpoly(["z1", "z2", "z3"])
        ref = series.coeff_monomial(w ** d)
        diff = sympy.expand(ref - sum(sympy.Rational(c.numerator, c.denominator)
                                      * sympy.Mul(*[x ** e for x, e in zip(xs, exps)])
                                      for exps, c in got.terms.items()))
        assert diff == 0


@pytest.mark.parametrize("m", [2, 4, 6])
def test_translation_invariance_and_taylor(m):
    lam0 = P.admp(m, 0, 0)
    assert len(J.translate(J.jack_poly(lam0, J.MINUS3, m))) == 1
    table = J.translate_expand(P.admp(m, 1, 0), J.MINUS3, m)
    assert [o for o, _ in table] == list(range(m // 2 + 1))
    for order, exp in table:
        (mu, c), = exp.coeffs.items()
        assert c == 2 ** order and P.is_admissible(mu, m)


def test_json_shape():
    d = J.jack_poly((2,), F(2), 2).to_json()
    assert d == {"n": 2, "terms": [{"partition": [2], "coeff": "1"}, {"partition": [1, 1], "coeff": "2/3"}]}
