from fractions import Fraction as F
from math import gcd

import pytest
from hypothesis import given, strategies as st

from ospzhu import minmod as M
from ospzhu.errors import NotAdmissible
from ospzhu.exactalg import UPoly, rational_roots

HALF = F(1, 2)


def admissible_pairs(limit=12):
    return [(u, v) for u in range(2, limit + 1) for v in range(1, limit + 1)
            if (u - v) % 2 == 0 and gcd(u, (u - v) // 2) == 1]


PAIRS = admissible_pairs()


def test_validate_examples():
    assert M.validate(2, 4).k == F(-5, 4)
    assert M.validate(3, 1).k == 0
    assert M.validate(3, 5).xi2 == F(3, 5)
    with pytest.raises(NotAdmissible, match=r"gcd\(u,\(u-v\)/2\) != 1"):
        M.validate(2, 6)
    with pytest.raises(NotAdmissible, match="u - v even"):
        M.validate(3, 4)
    with pytest.raises(NotAdmissible, match="u >= 2"):
        M.validate(1, 3)
    with pytest.raises(NotAdmissible, match="v >= 1"):
        M.validate(2, 0)


def test_kac_table_examples():
    t = M.kac_tables(M.validate(2, 4))
    assert t.ns == [(1, 2)] and t.r == [(1, 1), (1, 3)] and t.r_reduced == [(1, 1)]
    t = M.kac_tables(M.validate(3, 5))
    assert t.ns == [(1, 2), (1, 4), (2, 1), (2, 3)]
    t = M.kac_tables(M.validate(5, 1))
    assert t.ns == t.r == t.r_reduced == []


def test_spectrum_examples():
    p = M.validate(2, 4)
    assert M.spectrum(p, 1, 2)[:2] == (F(-1, 2), 0)
    assert M.spectrum(p, 1, 1)[2] == F(-15, 32)
    for u, v in [(3, 5), (4, 6), (7, 3)]:
        assert M.spectrum(M.validate(u, v), 1, 0)[0] == 0


@pytest.mark.parametrize("u,v", PAIRS)
def test_kac_symmetries(u, v):
    pair = M.validate(u, v)
    tabs = M.kac_tables(pair)
    for (i, j), (lam, s, q) in tabs.values.items():
        assert M.spectrum(pair, u - i, v - j)[1] == -s
        assert q == (s * s - 1) / 2
        if (i + j) % 2:
            assert lam + HALF == s
        else:
            assert lam == s - 1
    db = M.degree_bounds(pair)
    assert 0 <= db["ns_slack"] <= HALF
    assert 0 <= db["r_slack"] <= HALF
    g = M.zhu_image(pair, "ns").polynomial
    # root multiset closed under negation
    assert g.compose(UPoly((0, -1), g.var)) == g * (-1) ** g.degree


def test_pairs_enumerated():
    assert len(PAIRS) > 30
    assert (2, 4) in PAIRS and (2, 6) not in PAIRS


def test_zhu_images():
    p = M.validate(2, 4)
    ns = M.zhu_image(p, "ns")
    assert (ns.e_power, ns.has_x_factor, ns.acts_on) == (0, True, "v")
    assert ns.polynomial == UPoly((0, 1), "Sigma")
    r = M.zhu_image(p, "r")
    assert r.polynomial == UPoly((F(15, 32), 1), "Q")
    ns35 = M.zhu_image(M.validate(3, 5), "ns")
    assert ns35.e_power == 1 and not ns35.has_x_factor
    assert ns35.polynomial == UPoly.from_roots([F(-1, 10), F(-7, 10), F(7, 10), F(1, 10)], "Sigma")
    assert rational_roots(ns35.polynomial) == [F(-7, 10), F(-1, 10), F(1, 10), F(7, 10)]
    r46 = M.zhu_image(M.validate(4, 6), "r")
    assert (r46.e_power, r46.acts_on) == (1, "y0 v")
    assert M.zhu_image(M.validate(3, 5), "r").to_json()["g"] == {"var": "Q", "coeffs": ["126/625", "9/10", "1"]}
    with pytest.raises(NotAdmissible):
        M.zhu_image(p, "x")


def test_classify_examples():
    mods = M.classify(M.validate(2, 4))
    names = [str(m) for m in mods]
    assert names == [
        "NS F(lambda=0)", "NS H(lambda=-1/2)", "NS L(lambda=1/2)", "NS R(class=[lambda], s=0)",
        "R H(lambda=-3/4)", "R H(lambda=-5/4)", "R L(lambda=3/4)", "R L(lambda=5/4)",
        "R R(class=[lambda], q=-15/32)",
    ]
    dense = [m for m in mods if m.family == "dense"]
    assert [m.parity_reversal for m in dense] == [False, True]
    assert all(m.exclusion for m in dense)
    finite_only = M.classify(M.validate(5, 1))
    assert {m.family for m in finite_only} == {"finite"}
    assert [str(m) for m in finite_only] == ["NS F(lambda=0)", "NS F(lambda=1)", "R F(lambda=0)",
                                             "R F(lambda=1)"]
    hw = [m for m in M.classify(M.validate(3, 5)) if m.sector == "ns" and m.family == "highest-weight"]
    assert [m.params[0][1] for m in hw] == [F(-3, 5), F(-6, 5), F(1, 5), F(-2, 5)]


@given(st.sampled_from(PAIRS))
def test_classify_distinct(uv):
    mods = M.classify(M.validate(*uv))
    keys = [m.key() for m in mods]
    assert len(keys) == len(set(keys))


def test_json_shapes():
    d = M.kac_tables(M.validate(2, 4)).to_json()
    assert d["ns_table"] == [{"i": 1, "j": 2, "lambda": "-1/2", "s": "0", "q": "-1/2"}]
    assert d["k"] == "-5/4" and d["xi2"] == "1/2"
