import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qcover.subspace import (
    Subspace,
    dual,
    enum_grassmannian,
    enum_subspaces_of,
    full_space,
    gaussian,
    grassmannian_array,
    lattice_ops,
    prefix_class,
    prefix_space,
    rank,
    rank_array,
    rref,
    rref_array,
    span,
    unrank,
    zero_subspace,
)
from qcover.spreads import field_spread


def b(s):
    return int(s.replace(" ", ""), 2)


def test_gaussian_values():
    assert gaussian(4, 2) == 35
    assert gaussian(10, 3) == 6347715
    assert gaussian(7, 0) == 1
    with pytest.raises(ValueError):
        gaussian(3, 5)
    assert gaussian(4, 2, q=3) == 130


def test_span_of_example_lifting():
    x = span([b("100110"), b("010011"), b("001001")], 6)
    assert x.dim == 3
    assert b("101111") in x
    assert span([0], 6).dim == 0


def test_span_of_translated_triangle():
    u, v1, v2 = 0b1000, 0b0001, 0b0010
    x = span([u, u ^ v1, u ^ v2, u ^ v1 ^ v2], 4)
    assert x.dim == 3


def test_lattice_ops():
    x = span([0b110000, 0b001100, 0b000011], 6)
    y = span([0b110000, 0b001100, 0b100001], 6)
    assert lattice_ops(x, x, "intersect_dim") == 3
    assert lattice_ops(x, y, "intersect_dim") == 2
    assert x.distance(y) == 2
    assert lattice_ops(x, zero_subspace(6), "contains_subspace")
    assert lattice_ops(x, 0b111100, "contains_vector")
    assert lattice_ops(x, y, "sum").dim == 4
    with pytest.raises(ValueError):
        lattice_ops(x, full_space(5), "sum")


def test_dual():
    assert dual(full_space(5)) == zero_subspace(5)
    assert span([0b110000, 0b000101], 6).dual().dim == 4


def test_duality_reverses_inclusion_over_a_spread():
    spread = field_spread(6, 2)
    for s in spread:
        for z in enum_grassmannian(6, 1):
            if s.dual().contains(z):
                assert z.dual().contains(s)


@pytest.mark.parametrize("n,k,count", [(4, 2, 35), (5, 2, 155), (6, 6, 1), (6, 0, 1)])
def test_enum_counts(n, k, count):
    subs = list(enum_grassmannian(n, k))
    assert len(subs) == count == len(set(subs))
    if k == n:
        assert subs == [full_space(n)]


@pytest.mark.parametrize("n,k", [(5, 2), (6, 3), (7, 2), (7, 4)])
def test_rank_unrank_bijection(n, k):
    for i, x in enumerate(enum_grassmannian(n, k)):
        assert rank(x).global_index == i
        assert unrank(i, n, k) == x
    with pytest.raises(IndexError):
        unrank(gaussian(n, k), n, k)


@pytest.mark.parametrize("n,k", [(6, 3), (8, 2), (9, 4), (10, 3)])
def test_rank_array_matches_order(n, k):
    rows = grassmannian_array(n, k)
    assert np.array_equal(rank_array(rows, n), np.arange(len(rows)))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 255), min_size=1, max_size=6))
def test_rref_is_canonical(vectors):
    rows = rref(vectors)
    assert rref(list(rows)[::-1] + [rows[0] ^ rows[-1]] if rows else []) == rows
    arr, ranks = rref_array(np.array([vectors + [0] * (6 - len(vectors))]), 8)
    assert ranks[0] == len(rows)
    assert tuple(arr[0][:len(rows)]) == rows


def test_subspaces_of():
    x = span([0b1000000, 0b0100000, 0b0010000], 7)
    subs = list(enum_subspaces_of(x, 2))
    assert len(subs) == 7 and all(x.contains(s) for s in subs)
    assert all(s == span(s.rows, 7) for s in subs)
    assert len(list(enum_subspaces_of(prefix_space(9, 4), 3))) == 155


def test_spread_points_once():
    hits = {}
    for s in field_spread(4, 2):
        for p in enum_subspaces_of(s, 1):
            hits[p] = hits.get(p, 0) + 1
    assert len(hits) == 15 and set(hits.values()) == {1}


def test_prefix_classes():
    assert prefix_class(0, 7, 3) == 0
    n, ell = 7, 3
    classes = {}
    for v in range(1 << n):
        classes.setdefault(prefix_class(v, n, ell), []).append(v)
    assert len(classes) == 8 and all(len(c) == 16 for c in classes.values())
    k = 3
    nonzero_prefix = sum(1 for v in range(1 << n) if prefix_class(v, n, k))
    assert nonzero_prefix == ((1 << k) - 1) * (1 << (n - k))


def test_prefix_space_dimension():
    assert prefix_space(8, 4).dim == 4
    assert prefix_space(8, 4, [0b0001, 0b0010]).dim == 6


def test_subspace_validation():
    with pytest.raises(ValueError):
        Subspace(3, (0b10000,))
    with pytest.raises(ValueError):
        span([1 << 6], 6)
