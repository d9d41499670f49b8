"""Gabidulin MRD codes, lifting, and lifted codes as subspace designs.

A k x ell binary matrix is stored as k row integers of ell bits each.  The
codeword of a linearized polynomial f is the matrix whose row i is f(alpha^i)
written as an ell-bit field element, so a lifted block has k x (n-k) orientation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .design import CoveringDesign
from .field import LinearizedPoly, tower
from .subspace import Subspace, rref


@dataclass(frozen=True)
class RankMatrix:
    rows: tuple[int, ...]
    cols: int

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), self.cols

    @property
    def rank(self) -> int:
        return len(rref(self.rows))

    def __add__(self, other: "RankMatrix") -> "RankMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")
        return RankMatrix(tuple(a ^ b for a, b in zip(self.rows, other.rows)), self.cols)

    __sub__ = __add__

    @classmethod
    def zeros(cls, k: int, ell: int) -> "RankMatrix":
        return cls((0,) * k, ell)

    @classmethod
    def from_bits(cls, bits) -> "RankMatrix":
        """From a nested list of 0/1 entries, row-major."""
        rows = tuple(int("".join(str(int(b)) for b in row), 2) for row in bits)
        return cls(rows, len(bits[0]))


def rank_distance(a: RankMatrix, b: RankMatrix) -> int:
    return (a - b).rank


def _check_params(k: int, ell: int, delta: int):
    if k > ell:
        raise ValueError("MRD requires k ≤ n−k")
    if not 1 <= delta <= k:
        raise ValueError(f"minimum distance {delta} outside 1..{k}")
    if ell > 16:
        raise ValueError("field degree above 16 is not supported")


def _basis_codewords(k: int, ell: int, delta: int) -> np.ndarray:
    """Codewords of the monomials alpha^t x^(2^j), t < ell, j < k-delta+1."""
    F = tower(ell)
    K = k - delta + 1
    points = [F.alpha_pow(i) for i in range(k)]
    out = []
    for j in range(K):
        for t in range(ell):
            c = F.alpha_pow(t)
            out.append([F.mul(c, F.frobenius(g, j)) for g in points])
    return np.array(out, dtype=np.int64).reshape(-1, k)


def gabidulin_array(k: int, ell: int, delta: int) -> np.ndarray:
    """All 2^(ell (k-delta+1)) codewords as a (count, k) array of rows.

    Entry c of the result is the codeword of the polynomial whose coefficient
    vector, packed ell bits per coefficient, equals c.
    """
    _check_params(k, ell, delta)
    basis = _basis_codewords(k, ell, delta)
    words = np.zeros((1, k), dtype=np.int64)
    for b in basis:
        words = np.concatenate([words, words ^ b[None, :]])
    return words


def gabidulin_codewords(k: int, ell: int, delta: int) -> Iterator[RankMatrix]:
    """Stream the codewords of the Gabidulin code, one polynomial at a time."""
    _check_params(k, ell, delta)
    F = tower(ell)
    K = k - delta + 1
    points = [F.alpha_pow(i) for i in range(k)]
    for packed in range(1 << (ell * K)):
        coeffs = tuple((packed >> (ell * j)) & F.order for j in range(K))
        f = LinearizedPoly(coeffs, F)
        yield RankMatrix(tuple(f(g) for g in points), ell)


def lift(a: RankMatrix) -> Subspace:
    """Row space of [I_k | A]; already in reduced echelon form."""
    k, ell = a.shape
    n = k + ell
    return Subspace(n, tuple((1 << (n - 1 - i)) | row for i, row in enumerate(a.rows)))


def lift_array(words: np.ndarray, ell: int) -> np.ndarray:
    words = np.asarray(words, dtype=np.int64)
    k = words.shape[1]
    ident = np.array([1 << (ell + k - 1 - i) for i in range(k)], dtype=np.int64)
    return words | ident[None, :]


def lifted_mrd_rows(n: int, k: int, delta: int) -> np.ndarray:
    return lift_array(gabidulin_array(k, n - k, delta), n - k)


def lifted_mrd(n: int, k: int, delta: int) -> CoveringDesign:
    """The lifted Gabidulin code as a block set.

    Blocks pairwise have subspace distance at least 2 delta, and they form a
    transversal design in which every admissible (k-delta+1)-subspace lies in
    exactly one block; the design's r records that t.
    """
    if k > n - k:
        raise ValueError("MRD requires k ≤ n−k")
    return CoveringDesign.from_rows(n, k, k - delta + 1, lifted_mrd_rows(n, k, delta),
                                    provenance="lifted-mrd", canonical=True)


def std_exact_cover_check(blocks, t: int, k: int, n: int) -> bool:
    """Every t-subspace meeting V_0^{(n,k)} trivially lies in exactly one block.

    Such subspaces are exactly those whose nonzero points all have nonzero
    k-prefix; they then meet every group V_x in at most one point.
    """
    from .verify import multiplicity_histogram, v0_dim_filter

    if isinstance(blocks, CoveringDesign):
        rows = blocks.rows
    else:
        rows = np.array([b.rows for b in blocks], dtype=np.int64).reshape(-1, k)
    design = CoveringDesign(n, k, t, rows)
    hist = multiplicity_histogram(design, v0_dim_filter(n, k, 0))
    return set(hist) == {1}
