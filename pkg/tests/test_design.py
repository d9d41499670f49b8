import numpy as np
import pytest

from qcover.design import CoveringDesign, DesignError, merge, structural_counts
from qcover.subspace import full_space, prefix_space, span


def test_canonical_rows_and_equality():
    a = span([0b1100, 0b0011], 4)
    d1 = CoveringDesign.from_rows(4, 2, 1, [[0b1111, 0b0011]])
    d2 = CoveringDesign.from_subspaces(4, 2, 1, [a])
    assert d1 == d2 and hash(d1) == hash(d2)
    assert d1.blocks == [a]


def test_duplicates_and_dimension():
    with pytest.raises(DesignError, match="duplicate"):
        CoveringDesign.from_rows(4, 2, 1, [[0b1100, 0b0011], [0b1111, 0b0011]])
    d = CoveringDesign.from_rows(4, 2, 1, [[0b1100, 0b0011], [0b1111, 0b0011]],
                                 allow_duplicates=True)
    assert len(d) == 1
    with pytest.raises(DesignError, match="dimensional"):
        CoveringDesign.from_rows(4, 2, 1, [[0b1100, 0b1100]])
    with pytest.raises(DesignError):
        CoveringDesign.from_rows(4, 2, 3, [])
    with pytest.raises(DesignError):
        CoveringDesign.from_subspaces(5, 2, 1, [span([1], 5)])


def test_structural_counts():
    blocks = [span([0b10000, 0b00001], 5), span([0b00010, 0b00001], 5), span([0b00100, 0b00010], 5)]
    d = CoveringDesign.from_subspaces(5, 2, 1, blocks)
    assert structural_counts(d, full_space(5)) == 3
    assert structural_counts(d, prefix_space(5, 2)) == 2
    d = d.annotate("U", prefix_space(5, 2))
    assert d.annotations["U"].count == 2
    with pytest.raises(DesignError):
        structural_counts(d, full_space(4))


def test_merge_detects_collisions():
    rows = np.array([[0b1000, 0b0100]])
    with pytest.raises(DesignError):
        merge(4, 2, 1, [rows, rows])
    assert len(merge(4, 2, 1, [rows, np.array([[0b0010, 0b0001]])])) == 2
