"""Subspaces of F_2^n in reduced row echelon form.

A vector of F_2^n is a plain ``int``: coordinate j (1-based, left to right)
lives at bit n - j, so the leftmost coordinate is the most significant bit.
A subspace is stored as its RREF basis, rows sorted by decreasing pivot bit.

Grassmannian ranking
--------------------
A k-subspace is indexed by its pivot set and its free entries.  Pivot sets,
as sets of bit positions, are ordered colexicographically; within a pivot set
the free entries form a packed integer (bottom row first, low bits first).
With pivots s_0 < ... < s_{k-1} the index is

    sum_i 2^(sum_{j>i} (s_j - j)) * [s_i choose i+1]_2  +  free

which needs no lookup tables and gives O(k) rank/unrank.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, NamedTuple

import numpy as np

MAX_DIM = 32


# ---------------------------------------------------------------------------
# Gaussian coefficients
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def gaussian(n: int, k: int, q: int = 2) -> int:
    """The q-ary Gaussian coefficient [n choose k]_q, exactly."""
    if k < 0 or k > n or q < 2:
        raise ValueError(f"invalid parameters n={n}, k={k}, q={q}")
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (k - i) - 1
    return num // den


# ---------------------------------------------------------------------------
# scalar helpers
# ---------------------------------------------------------------------------

def rref(vectors: Iterable[int]) -> tuple[int, ...]:
    """Reduced row echelon basis of the span, rows by decreasing pivot."""
    rows: list[int] = []
    for v in vectors:
        for r in rows:
            if v >> (r.bit_length() - 1) & 1:
                v ^= r
        if v:
            p = v.bit_length() - 1
            rows = [r ^ v if r >> p & 1 else r for r in rows]
            rows.append(v)
    rows.sort(reverse=True)
    return tuple(rows)


def reduce_vector(v: int, rows: Iterable[int]) -> int:
    for r in rows:
        if v >> (r.bit_length() - 1) & 1:
            v ^= r
    return v


def prefix_class(v: int, n: int, ell: int) -> int:
    """The first ``ell`` coordinates of v, as an ell-bit integer."""
    if not 0 <= ell <= n:
        raise ValueError("prefix length exceeds ambient dimension")
    return v >> (n - ell)


def dot(u: int, v: int) -> int:
    return (u & v).bit_count() & 1


def format_vector(v: int, n: int) -> str:
    return format(v, f"0{n}b") if n else ""


# ---------------------------------------------------------------------------
# Subspace
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.n <= MAX_DIM:
            raise ValueError(f"ambient dimension {self.n} out of range")
        if self.rows and self.rows[0] >> self.n:
            raise ValueError("row has bits above the ambient dimension")

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(r.bit_length() - 1 for r in self.rows)

    def __repr__(self):
        body = " ".join(format_vector(r, self.n) for r in self.rows)
        return f"Subspace(n={self.n}, [{body}])"

    def __contains__(self, v: int) -> bool:
        return reduce_vector(v, self.rows) == 0

    def __le__(self, other: "Subspace") -> bool:
        return other.contains(self)

    def contains(self, other: "Subspace") -> bool:
        _same_ambient(self, other)
        return all(r in self for r in other.rows)

    def points(self) -> list[int]:
        """All 2^dim vectors, including zero."""
        pts = [0]
        for r in self.rows:
            pts += [p ^ r for p in pts]
        return pts

    def join(self, other: "Subspace") -> "Subspace":
        _same_ambient(self, other)
        return Subspace(self.n, rref(self.rows + other.rows))

    __add__ = join

    def meet(self, other: "Subspace") -> "Subspace":
        _same_ambient(self, other)
        return self.dual().join(other.dual()).dual()

    __and__ = meet

    def intersect_dim(self, other: "Subspace") -> int:
        return self.dim + other.dim - self.join(other).dim

    def distance(self, other: "Subspace") -> int:
        """Subspace distance dim X + dim Y - 2 dim(X cap Y)."""
        return self.dim + other.dim - 2 * self.intersect_dim(other)

    def dual(self) -> "Subspace":
        """Orthogonal complement under the standard dot product."""
        pivots = set(self.pivots)
        out = []
        for f in range(self.n):
            if f in pivots:
                continue
            y = 1 << f
            for r in self.rows:
                if r >> f & 1:
                    y |= 1 << (r.bit_length() - 1)
            out.append(y)
        return Subspace(self.n, rref(out))

    def embed(self, n: int, shift: int = 0) -> "Subspace":
        """Same rows in F_2^n, shifted left by ``shift`` bit positions."""
        return Subspace(n, tuple(r << shift for r in self.rows))


def _same_ambient(x: Subspace, y: Subspace):
    if x.n != y.n:
        raise ValueError(f"ambient mismatch: {x.n} != {y.n}")


def span(vectors: Iterable[int], n: int | None = None) -> Subspace:
    vectors = list(vectors)
    if n is None:
        raise ValueError("span needs an ambient dimension")
    for v in vectors:
        if v < 0 or v >> n:
            raise ValueError(f"vector {v:#x} not in F_2^{n}")
    return Subspace(n, rref(vectors))


def zero_subspace(n: int) -> Subspace:
    return Subspace(n, ())


def full_space(n: int) -> Subspace:
    return Subspace(n, tuple(1 << b for b in range(n - 1, -1, -1)))


def unit(n: int, j: int) -> int:
    """The j-th unit vector (1-based coordinate) of F_2^n."""
    return 1 << (n - j)


def prefix_space(n: int, ell: int, prefixes: Iterable[int] = ()) -> Subspace:
    """V_0 united with the classes V_x for the given ell-bit prefixes.

    With prefixes forming a subspace this is a subspace of dimension
    n - ell + dim(prefixes).
    """
    vectors = [1 << b for b in range(n - ell)]
    vectors += [x << (n - ell) for x in prefixes]
    return span(vectors, n)


def lattice_ops(x: Subspace, y, op: str):
    """Binary lattice queries; for contains_vector y is a BitVec."""
    if op == "contains_vector":
        return y in x
    _same_ambient(x, y)
    if op == "intersect_dim":
        return x.intersect_dim(y)
    if op == "sum":
        return x.join(y)
    if op == "contains_subspace":
        return x.contains(y)
    raise ValueError(f"unknown lattice operation {op!r}")


def dual(x: Subspace) -> Subspace:
    return x.dual()


# ---------------------------------------------------------------------------
# rank / unrank
# ---------------------------------------------------------------------------

class GrassmannRank(NamedTuple):
    pivot_set: tuple[int, ...]   # pivot bit positions, ascending
    free_bits: int
    global_index: int


def _gb(s: int, t: int) -> int:
    return gaussian(s, t) if t <= s else 0


def _pivot_offset(pivots_asc) -> int:
    offset = 0
    weight_exp = 0
    for i in range(len(pivots_asc) - 1, -1, -1):
        s = pivots_asc[i]
        offset += _gb(s, i + 1) << weight_exp
        weight_exp += s - i
    return offset


def rank(x: Subspace) -> GrassmannRank:
    k = x.dim
    s = x.pivots[::-1]
    pivot_set = set(s)
    free = 0
    shift = 0
    for i in range(k):
        row = x.rows[k - 1 - i]
        for b in range(s[i]):
            if b not in pivot_set:
                free |= (row >> b & 1) << shift
                shift += 1
    return GrassmannRank(tuple(s), free, _pivot_offset(s) + free)


def _rows_from(pivots_asc, free: int) -> tuple[int, ...]:
    k = len(pivots_asc)
    pivot_set = set(pivots_asc)
    rows = []
    shift = 0
    for i in range(k):
        s = pivots_asc[i]
        row = 1 << s
        for b in range(s):
            if b not in pivot_set:
                row |= (free >> shift & 1) << b
                shift += 1
        rows.append(row)
    return tuple(reversed(rows))


def unrank(index: int, n: int, k: int) -> Subspace:
    total = gaussian(n, k)
    if not 0 <= index < total:
        raise IndexError(f"index {index} outside [0, {total})")
    # the weight of position i depends on the larger pivots, so peel from the top
    pivots = [0] * k
    upper = n
    weight_exp = 0
    for i in range(k - 1, -1, -1):
        s = upper - 1
        while s > i and _gb(s, i + 1) << weight_exp > index:
            s -= 1
        index -= _gb(s, i + 1) << weight_exp
        pivots[i] = s
        weight_exp += s - i
        upper = s
    return Subspace(n, _rows_from(pivots, index))


def colex_pivot_sets(n: int, k: int) -> list[tuple[int, ...]]:
    return sorted(combinations(range(n), k), key=lambda c: c[::-1])


def enum_grassmannian(n: int, k: int) -> Iterator[Subspace]:
    """Every k-subspace of F_2^n exactly once, in rank order."""
    if not 0 <= k <= n <= MAX_DIM:
        raise ValueError(f"invalid parameters n={n}, k={k}")
    for piv in colex_pivot_sets(n, k):
        nfree = sum(s - i for i, s in enumerate(piv))
        for free in range(1 << nfree):
            yield Subspace(n, _rows_from(piv, free))


def grassmannian_chunks(n: int, k: int) -> Iterator[tuple[int, np.ndarray]]:
    """(first index, rows array) blocks of G_2(n,k), one per pivot set."""
    start = 0
    for piv in colex_pivot_sets(n, k):
        pivot_set = set(piv)
        nfree = sum(s - i for i, s in enumerate(piv))
        free = np.arange(1 << nfree, dtype=np.int64)
        rows = np.empty((free.size, k), dtype=np.int64)
        shift = 0
        for i, s in enumerate(piv):
            row = np.full(free.size, 1 << s, dtype=np.int64)
            for b in range(s):
                if b not in pivot_set:
                    row |= ((free >> shift) & 1) << b
                    shift += 1
            rows[:, k - 1 - i] = row
        yield start, rows
        start += free.size


def grassmannian_array(n: int, k: int) -> np.ndarray:
    """All k-subspaces of F_2^n as an (N, k) array of RREF rows, rank order."""
    if k == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.concatenate([rows for _, rows in grassmannian_chunks(n, k)])


def enum_subspaces_of(x: Subspace, r: int) -> Iterator[Subspace]:
    if not 0 <= r <= x.dim:
        raise ValueError(f"cannot take {r}-subspaces of a {x.dim}-subspace")
    basis = x.rows[::-1]  # bit j of a coefficient row selects basis[j]
    for coeff in enum_grassmannian(x.dim, r):
        rows = []
        for c in coeff.rows:
            v = 0
            for j in range(x.dim):
                if c >> j & 1:
                    v ^= basis[j]
            rows.append(v)
        yield Subspace(x.n, tuple(rows))


# ---------------------------------------------------------------------------
# batch kernels on (count, dim) int64 arrays of rows
# ---------------------------------------------------------------------------

def bit_length(a: np.ndarray) -> np.ndarray:
    return np.frexp(np.asarray(a, dtype=np.float64))[1].astype(np.int64)


@lru_cache(maxsize=None)
def _gaussian_table(n: int, r: int) -> np.ndarray:
    return np.array([[_gb(s, t) for t in range(r + 1)]
                     for s in range(n + 1)], dtype=np.int64)


def rank_array(rows: np.ndarray, n: int) -> np.ndarray:
    """Vectorised ``rank(...).global_index`` for canonical row arrays."""
    rows = np.asarray(rows, dtype=np.int64)
    count, r = rows.shape
    if r == 0:
        return np.zeros(count, dtype=np.int64)
    if gaussian(n, r) >= 1 << 62:
        raise OverflowError("Grassmannian too large for 64-bit indexing")
    table = _gaussian_table(n, r)
    s = bit_length(rows[:, ::-1]) - 1           # ascending pivots
    index = np.zeros(count, dtype=np.int64)
    weight_exp = np.zeros(count, dtype=np.int64)
    for i in range(r - 1, -1, -1):
        index += table[s[:, i], i + 1] << weight_exp
        weight_exp += s[:, i] - i
    # free entries: RREF rows vanish on the other pivot columns, so deleting
    # the lower pivot positions from the bits below s_i packs them densely
    free = np.zeros(count, dtype=np.int64)
    base = np.zeros(count, dtype=np.int64)
    for i in range(r):
        v = rows[:, r - 1 - i] & ((np.int64(1) << s[:, i]) - 1)
        for j in range(i - 1, -1, -1):
            p = s[:, j]
            v = (v & ((np.int64(1) << p) - 1)) | ((v >> (p + 1)) << p)
        free |= v << base
        base += s[:, i] - i
    return index + free


def rref_array(rows: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Row-reduce each matrix of a (count, m) stack.  Returns (rows, ranks)."""
    a = np.array(rows, dtype=np.int64, copy=True)
    count, m = a.shape
    ranks = np.zeros(count, dtype=np.int64)
    idx = np.arange(m)
    everything = np.arange(count)
    for b in range(n - 1, -1, -1):
        has = ((a >> b) & 1).astype(bool) & (idx[None, :] >= ranks[:, None])
        found = has.any(axis=1)
        if not found.any():
            continue
        sel = np.argmax(has, axis=1)
        who = everything[found]
        src, dst = sel[found], ranks[found]
        pivot_rows = a[who, src]
        a[who, src] = a[who, dst]
        a[who, dst] = pivot_rows
        hit = ((a[who] >> b) & 1).astype(bool)
        hit[np.arange(who.size), dst] = False
        a[who] ^= np.where(hit, pivot_rows[:, None], 0)
        ranks[found] += 1
    return a, ranks


def apply_linear(images: np.ndarray | list[int], values: np.ndarray) -> np.ndarray:
    """Apply the linear map with images[b] = image of the unit vector 2^b."""
    values = np.asarray(values, dtype=np.int64)
    out = np.zeros_like(values)
    for b, img in enumerate(images):
        if img:
            out ^= np.where((values >> b) & 1, np.int64(img), 0)
    return out


def linear_map_images(domain_basis: list[int], images: list[int], n: int) -> list[int]:
    """Unit-vector images of the linear map sending domain_basis[j] -> images[j].

    ``domain_basis`` must be a basis of all of F_2^n.
    """
    if len(domain_basis) != n:
        raise ValueError("domain basis must span the whole space")
    # eliminate while tracking which basis vectors were combined
    pairs: list[tuple[int, int]] = []
    for j, v in enumerate(domain_basis):
        combo = 1 << j
        for pv, pc in sorted(pairs, reverse=True):
            if v >> (pv.bit_length() - 1) & 1:
                v ^= pv
                combo ^= pc
        if not v:
            raise ValueError("domain basis is linearly dependent")
        pairs.append((v, combo))
    out = []
    for b in range(n):
        v, combo = 1 << b, 0
        for pv, pc in sorted(pairs, reverse=True):
            if v >> (pv.bit_length() - 1) & 1:
                v ^= pv
                combo ^= pc
        img = 0
        for j in range(n):
            if combo >> j & 1:
                img ^= images[j]
        out.append(img)
    return out


def coefficient_products(coeffs: np.ndarray, blocks: np.ndarray) -> np.ndarray:
    """All r-subspaces of each block, from RREF coefficient rows.

    coeffs: (g, r) RREF rows of G_2(k, r); blocks: (m, k) RREF rows.
    Returns (m, g, r); each (block, g) slice is again in RREF.
    """
    m, k = blocks.shape
    g, r = coeffs.shape
    out = np.zeros((m, g, r), dtype=np.int64)
    for j in range(k):
        sel = ((coeffs >> (k - 1 - j)) & 1).astype(bool)
        out ^= np.where(sel[None, :, :], blocks[:, j][:, None, None], 0)
    return out


def inside_mask(blocks: np.ndarray, u: Subspace) -> np.ndarray:
    """Boolean mask of the blocks (rows arrays) contained in u."""
    checks = u.dual().rows
    mask = np.ones(len(blocks), dtype=bool)
    for h in checks:
        par = np.bitwise_count(blocks & np.int64(h)) & 1
        mask &= ~par.astype(bool).any(axis=1)
    return mask
