"""Compiled inner loops for coverage marking.

The numpy kernels in ``subspace`` are the reference; these fuse the
"r-subspaces of a block -> rank -> mark" pipeline so that no intermediate
arrays are materialised.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def _rank_rows(rows, r, table):
    # rows: RREF, descending pivots; table[s, t] = [s choose t]_2
    index = 0
    weight = 0
    # ascending pivots: the i-th smallest sits in rows[r-1-i]
    piv = np.empty(r, dtype=np.int64)
    for i in range(r):
        v = rows[r - 1 - i]
        b = 0
        while v > 1:
            v >>= 1
            b += 1
        piv[i] = b
    for i in range(r - 1, -1, -1):
        index += table[piv[i], i + 1] << weight
        weight += piv[i] - i
    free = 0
    base = 0
    for i in range(r):
        v = rows[r - 1 - i] & ((1 << piv[i]) - 1)
        for j in range(i - 1, -1, -1):
            p = piv[j]
            v = (v & ((1 << p) - 1)) | ((v >> (p + 1)) << p)
        free |= v << base
        base += piv[i] - i
    return index + free


@njit(cache=True)
def mark_blocks(blocks, coeffs, table, seen):
    """Set seen[rank] for every r-subspace of every block."""
    m, k = blocks.shape
    g, r = coeffs.shape
    sub = np.empty(r, dtype=np.int64)
    for b in range(m):
        for c in range(g):
            for t in range(r):
                acc = 0
                row = coeffs[c, t]
                for j in range(k):
                    if (row >> (k - 1 - j)) & 1:
                        acc ^= blocks[b, j]
                sub[t] = acc
            seen[_rank_rows(sub, r, table)] = True


@njit(cache=True)
def count_blocks(blocks, coeffs, table, counts):
    """Add one to counts[rank] for every r-subspace of every block."""
    m, k = blocks.shape
    g, r = coeffs.shape
    sub = np.empty(r, dtype=np.int64)
    for b in range(m):
        for c in range(g):
            for t in range(r):
                acc = 0
                row = coeffs[c, t]
                for j in range(k):
                    if (row >> (k - 1 - j)) & 1:
                        acc ^= blocks[b, j]
                sub[t] = acc
            counts[_rank_rows(sub, r, table)] += 1
