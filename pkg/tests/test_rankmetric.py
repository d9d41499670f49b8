import random

import pytest

from qcover.rankmetric import (
    RankMatrix,
    gabidulin_array,
    gabidulin_codewords,
    lift,
    lifted_mrd,
    rank_distance,
    std_exact_cover_check,
)
from qcover.subspace import prefix_class, span
from qcover.verify import min_distance, packing_check


def test_rank_distance_basics():
    a = RankMatrix((0b1000, 0b0100, 0b0010), 4)
    z = RankMatrix.zeros(3, 4)
    assert rank_distance(a, a) == 0
    assert rank_distance(a, z) == 3


def test_rank_distance_triangle():
    rng = random.Random(7)
    mats = lambda: RankMatrix(tuple(rng.randrange(16) for _ in range(3)), 4)
    for _ in range(1000):
        a, b, c = mats(), mats(), mats()
        assert rank_distance(a, c) <= rank_distance(a, b) + rank_distance(b, c)


def test_full_distance_code():
    words = list(gabidulin_codewords(3, 4, 3))
    assert len(words) == 16
    for i in range(16):
        for j in range(i + 1, 16):
            assert rank_distance(words[i], words[j]) == 3


def test_delta_one_is_whole_space():
    words = {w.rows for w in gabidulin_codewords(2, 3, 1)}
    assert len(words) == 1 << 6


def test_stream_matches_array():
    arr = gabidulin_array(3, 4, 2)
    assert len(arr) == 256
    assert {tuple(r) for r in arr.tolist()} == {w.rows for w in gabidulin_codewords(3, 4, 2)}


def test_code_is_linear_with_min_distance():
    arr = gabidulin_array(3, 4, 2)
    words = {tuple(r) for r in arr.tolist()}
    for w in list(words)[:20]:
        for v in list(words)[:20]:
            assert tuple(a ^ b for a, b in zip(w, v)) in words
    ranks = [RankMatrix(w, 4).rank for w in words if any(w)]
    assert min(ranks) == 2


def test_lift_of_example_matrix():
    a = RankMatrix.from_bits([[1, 1, 0], [0, 1, 1], [0, 0, 1]])
    x = lift(a)
    assert x.rows == (0b100110, 0b010011, 0b001001)
    pts = set(x.points())
    expected = {0b100110, 0b010011, 0b001001, 0b110101, 0b101111, 0b011010, 0b111100, 0}
    assert pts == expected
    assert lift(RankMatrix.zeros(3, 3)) == span([0b100000, 0b010000, 0b001000], 6)
    assert all(prefix_class(v, 6, 3) for v in pts if v)


@pytest.mark.parametrize("n,k,delta,size", [(7, 3, 2, 256), (8, 4, 2, 4096), (8, 4, 3, 256),
                                            (6, 3, 2, 64), (10, 5, 4, 1024)])
def test_lifted_mrd_sizes(n, k, delta, size):
    assert len(lifted_mrd(n, k, delta)) == size


def test_lifted_mrd_distance():
    code = lifted_mrd(7, 3, 2)
    assert packing_check(code, t=2)
    assert min_distance(code.blocks[:60]) >= 4


def test_mrd_rejects_wide_codes():
    with pytest.raises(ValueError, match="MRD requires"):
        lifted_mrd(7, 4, 2)


def test_std_exact_cover():
    code = lifted_mrd(6, 3, 2)
    assert std_exact_cover_check(code.blocks, 2, 3, 6)
    assert not std_exact_cover_check(code.blocks[1:], 2, 3, 6)
