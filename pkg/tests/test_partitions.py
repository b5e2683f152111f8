from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from ospzhu import partitions as P
from ospzhu.errors import DoesNotFit, InvalidLabels, OutOfRange, WeightMismatch

parts = st.lists(st.integers(0, 6), max_size=6).map(lambda xs: P.partition(sorted(xs, reverse=True)))


def test_basic_statistics():
    lam = (3, 1, 1)
    assert P.weight(lam) == 5 and P.length(lam) == 3
    assert P.conjugate(lam) == (3, 1, 1)
    assert P.conjugate((4, 2)) == (2, 2, 1, 1)
    assert P.n_stat((2, 1, 1)) == 3
    assert P.z_lambda((2, 1, 1)) == 4
    assert P.padded((2,), 3) == (2, 0, 0)
    with pytest.raises(DoesNotFit):
        P.padded((1, 1, 1), 2)
    with pytest.raises(ValueError):
        P.partition([1, 2])


def test_cell_data_frozen():
    data = [(c.row, c.col) + c.as_tuple() for c in P.cell_data((3, 1))]
    assert data == [(0, 0, 2, 1, 0, 0), (0, 1, 1, 0, 1, 0), (0, 2, 0, 0, 2, 0), (1, 0, 0, 0, 0, 1)]


@given(parts)
def test_conjugate_is_involution(lam):
    assert P.conjugate(P.conjugate(lam)) == lam
    assert P.weight(P.conjugate(lam)) == P.weight(lam)


@given(parts)
def test_hook_lengths_sum(lam):
    # sum of arms = n(lam'), sum of legs = n(lam)
    data = P.cell_data(lam)
    assert sum(c.leg for c in data) == P.n_stat(lam)
    assert sum(c.arm for c in data) == P.n_stat(P.conjugate(lam))


@given(st.integers(0, 7))
def test_dominance_reverses_under_conjugation(d):
    ps = P.partitions_of(d)
    for a in ps:
        for b in ps:
            assert P.dominance_leq(a, b) == P.dominance_leq(P.conjugate(b), P.conjugate(a))


def test_dominance_weight_mismatch():
    with pytest.raises(WeightMismatch):
        P.dominance_leq((2,), (1,))


def test_partition_counts():
    assert [len(P.partitions_of(d)) for d in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]
    assert P.partitions_of(4, 2) == ((4,), (3, 1), (2, 2))


def test_admissibility():
    # without n every i <= l(lam) is checked against padding zeros
    assert P.is_admissible((4, 2))
    assert not P.is_admissible((3, 2, 1))
    assert not P.is_admissible((2, 2, 1))
    assert P.is_admissible((3, 2, 1), 4)
    # n-aware: trailing zero parts only matter within n variables
    assert P.is_admissible((1,), 2)
    assert not P.is_admissible((1,), 3)
    assert P.is_admissible((5, 4, 3, 2, 1), 5)
    assert not P.is_admissible((1, 1, 1), 2)


def test_complement_and_shift():
    assert P.complement(3, (2, 1), 3) == (3, 2, 1)
    assert P.complement(2, (), 2) == (2, 2)
    assert P.shift((2, 1), 1, 3) == (3, 2, 1)
    with pytest.raises(DoesNotFit):
        P.complement(1, (2,), 2)
    with pytest.raises(DoesNotFit):
        P.shift((2, 1), -1, 3)


@given(parts, st.integers(0, 3))
def test_complement_involution(lam, extra):
    m = max(len(lam), 1)
    k = (lam[0] if lam else 0) + extra
    assert P.complement(k, P.complement(k, lam, m), m) == lam


def test_dominated_cells():
    assert P.dominated_cells([(2, 1), (2, 2)], 3) == (1, 1)
    assert P.dominated_cells([(4, 2, 2)], 3) == (3, 2, 2)
    assert P.dominated_cells([(3, 2, 1), (3, 3, 1)], 3) == (2, 2, 1)


ADMP = {
    (2, 0, 0): (), (2, 1, 0): (1,), (2, 1, 1): (1, 1),
    (4, 0, 0): (2, 2), (4, 1, 0): (3, 2, 1), (4, 1, 1): (3, 3, 1, 1),
    (6, 0, 0): (4, 4, 2, 2), (6, 1, 0): (5, 4, 3, 2, 1),
    (1, 0, 0): (), (1, 1, 0): (),
    (3, 0, 0): (2,), (3, 1, 0): (2, 1), (3, 1, 1): (3, 1, 1),
    (5, 0, 0): (4, 2, 2), (5, 1, 0): (4, 3, 2, 1),
}


@pytest.mark.parametrize("key", sorted(ADMP))
def test_admp_frozen(key):
    m = key[0]
    lam = P.admp(*key)
    assert lam == ADMP[key]
    assert P.is_admissible(lam, m)


def test_admp_rejects_bad_labels():
    with pytest.raises(InvalidLabels):
        P.admp(4, 3, 0)
    with pytest.raises(InvalidLabels):
        P.admp(3, 2, 0)
    with pytest.raises(InvalidLabels):
        P.admp(0, 0, 0)


UNIQP = {
    1: [(0, (), 1)],
    2: [(0, (1,), 1), (1, (), 2)],
    3: [(0, (2, 1), 1), (1, (2,), 2)],
    4: [(0, (3, 2, 1), 1), (1, (3, 2), 2), (2, (2, 2), 4)],
    5: [(0, (4, 3, 2, 1), 1), (1, (4, 3, 2), 2), (2, (4, 2, 2), 4)],
}


@pytest.mark.parametrize("m", sorted(UNIQP))
def test_uniqp_table_frozen(m):
    assert P.uniqp_table(m) == [(o, mu, F(c)) for o, mu, c in UNIQP[m]]


def test_uniqp_indexing():
    assert P.uniqp(4, 2) == (3, 2, 1)
    assert P.uniqp(4, 0) == (2, 2)
    assert P.uniqp(5, 0) == (4, 2, 2)
    with pytest.raises(OutOfRange):
        P.uniqp(4, 3)


def test_cache_dir_roundtrip(tmp_path, monkeypatch):
    from ospzhu import cache
    monkeypatch.setenv("MINMOD_CACHE_DIR", str(tmp_path))
    cache.clear_memory()
    try:
        first = P.uniqp_table(3)
        assert (tmp_path / "uniqp.json").exists()
        cache.clear_memory()
        assert P.uniqp_table(3) == first
    finally:
        monkeypatch.delenv("MINMOD_CACHE_DIR")
        cache.clear_memory()
