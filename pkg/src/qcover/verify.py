"""Exhaustive coverage checks over G_2(n, r).

Each block enumerates its [k choose r]_2 r-subspaces (as products of RREF
coefficient rows with the block basis, which stay canonical), ranks them,
and marks a dense array indexed by Grassmannian rank.  The marking loop is
compiled; ``_shard_indices`` is the vectorised numpy equivalent.  Blocks can be split
into shards with private arrays merged afterwards; the report does not depend
on the split.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ._kernels import count_blocks, mark_blocks
from .design import CoveringDesign
from .subspace import (
    Subspace,
    _gaussian_table,
    coefficient_products,
    gaussian,
    grassmannian_array,
    grassmannian_chunks,
    rank_array,
    rref_array,
    unrank,
)

DEFAULT_MEMORY_CAP = 1 << 30
_CHUNK_ROWS = 1 << 21


class MemoryCapExceeded(MemoryError):
    def __init__(self, required: int, available: int):
        super().__init__(f"verification needs {required} bytes, cap is {available}")
        self.required = required
        self.available = available


@dataclass(frozen=True)
class CoverageReport:
    total_r_subspaces: int
    covered: int
    uncovered: int
    first_uncovered: Subspace | None = None
    multiplicity_histogram: dict[int, int] | None = None

    @property
    def is_cover(self) -> bool:
        return self.uncovered == 0

    def summary(self) -> str:
        lines = [f"total r-subspaces: {self.total_r_subspaces}",
                 f"covered: {self.covered}",
                 f"uncovered: {self.uncovered}"]
        if self.first_uncovered is not None:
            lines.append(f"first uncovered: {self.first_uncovered}")
        if self.multiplicity_histogram is not None:
            hist = ", ".join(f"{m}: {c}" for m, c in sorted(self.multiplicity_histogram.items()))
            lines.append(f"multiplicity histogram: {{{hist}}}")
        return "\n".join(lines)


def _check_memory(total: int, bytes_per: int, cap: int):
    need = total * bytes_per
    if need > cap:
        raise MemoryCapExceeded(need, cap)


def _shard_indices(rows: np.ndarray, n: int, k: int, r: int):
    """Yield the rank arrays of all r-subspaces of the given blocks."""
    coeffs = grassmannian_array(k, r)
    per_chunk = max(1, _CHUNK_ROWS // max(1, len(coeffs)))
    for start in range(0, len(rows), per_chunk):
        sub = coefficient_products(coeffs, rows[start:start + per_chunk])
        yield rank_array(sub.reshape(-1, r), n)


def _mark_shard(args):
    rows, n, k, r, total, counting = args
    coeffs = grassmannian_array(k, r)
    table = _gaussian_table(n, r)
    rows = np.ascontiguousarray(rows, dtype=np.int64)
    if counting:
        counts = np.zeros(total, dtype=np.int32)
        count_blocks(rows, coeffs, table, counts)
        return counts
    seen = np.zeros(total, dtype=np.bool_)
    mark_blocks(rows, coeffs, table, seen)
    return seen


def _run_shards(design: CoveringDesign, counting: bool, shards: int, workers: int):
    n, k, r = design.n, design.k, design.r
    total = gaussian(n, r)
    pieces = np.array_split(design.rows, max(1, shards))
    jobs = [(p, n, k, r, total, counting) for p in pieces]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_mark_shard, jobs))
    else:
        results = [_mark_shard(j) for j in jobs]
    acc = results[0]
    for res in results[1:]:
        if counting:
            acc = acc + res
        else:
            acc = acc | res
    return acc


def coverage_counts(design: CoveringDesign, *, shards: int = 1, workers: int = 1,
                    memory_cap: int = DEFAULT_MEMORY_CAP) -> np.ndarray:
    """Number of blocks containing each r-subspace, indexed by rank."""
    total = gaussian(design.n, design.r)
    _check_memory(total, 4 * (1 + (workers > 1) * max(1, shards)), memory_cap)
    if design.r == 0:
        return np.array([len(design)], dtype=np.int32)
    if not len(design):
        return np.zeros(total, dtype=np.int32)
    return _run_shards(design, True, shards, workers)


def verify_cover(design: CoveringDesign, *, histogram: bool = False, shards: int = 1,
                 workers: int = 1, memory_cap: int = DEFAULT_MEMORY_CAP) -> CoverageReport:
    """Check that every r-subspace of F_2^n lies in some block."""
    n, r = design.n, design.r
    total = gaussian(n, r)
    if histogram:
        counts = coverage_counts(design, shards=shards, workers=workers,
                                 memory_cap=memory_cap)
        seen = counts > 0
        values, freq = np.unique(counts, return_counts=True)
        hist = {int(v): int(f) for v, f in zip(values, freq)}
    else:
        _check_memory(total, 1 + (workers > 1) * max(1, shards), memory_cap)
        hist = None
        if r == 0:
            seen = np.array([len(design) > 0])
        elif not len(design):
            seen = np.zeros(total, dtype=bool)
        else:
            seen = _run_shards(design, False, shards, workers)
    covered = int(np.count_nonzero(seen))
    first = None
    if covered < total:
        first = unrank(int(np.argmin(seen)), n, r)
    return CoverageReport(total, covered, total - covered, first, hist)


def require_cover(design: CoveringDesign, **kw) -> CoveringDesign:
    """Verify and return the design marked verified; raise if not a cover."""
    report = verify_cover(design, **kw)
    if not report.is_cover:
        raise CoverageError(design, report)
    return design.with_(verified=True)


class CoverageError(RuntimeError):
    def __init__(self, design: CoveringDesign, report: CoverageReport):
        super().__init__(f"{design!r} leaves {report.uncovered} of "
                         f"{report.total_r_subspaces} r-subspaces uncovered; "
                         f"first: {report.first_uncovered}")
        self.design = design
        self.report = report


# ---------------------------------------------------------------------------
# filters and histograms
# ---------------------------------------------------------------------------

def prefix_rank(rows: np.ndarray, n: int, ell: int) -> np.ndarray:
    """Rank of the projection of each subspace onto its first ell coordinates."""
    proj = np.asarray(rows, dtype=np.int64) >> (n - ell)
    _, ranks = rref_array(proj, ell)
    return ranks


def v0_dim_filter(n: int, ell: int, d: int) -> Callable[[np.ndarray], np.ndarray]:
    """Keep r-subspaces X with dim(X cap V_0^{(n, ell)}) == d."""
    def keep(rows):
        return rows.shape[1] - prefix_rank(rows, n, ell) == d
    return keep


def multiplicity_histogram(design: CoveringDesign,
                           where: Callable[[np.ndarray], np.ndarray] | None = None,
                           **kw) -> dict[int, int]:
    """{multiplicity: number of r-subspaces}, optionally over a filtered class.

    ``where`` receives an (N, r) array of canonical rows and returns a mask.
    """
    counts = coverage_counts(design, **kw)
    if where is None:
        selected = counts
    else:
        parts = []
        for start, rows in grassmannian_chunks(design.n, design.r):
            mask = where(rows)
            parts.append(counts[start:start + len(rows)][mask])
        selected = np.concatenate(parts) if parts else counts[:0]
    values, freq = np.unique(selected, return_counts=True)
    return {int(v): int(f) for v, f in zip(values, freq)}


def packing_check(design_or_rows, n: int | None = None, t: int = 1) -> bool:
    """True iff no t-subspace lies in two blocks.

    t = 1 checks pairwise trivial intersection (spreads); t = delta checks
    subspace distance >= 2 delta for equal-dimension blocks.
    """
    if isinstance(design_or_rows, CoveringDesign):
        rows, n = design_or_rows.rows, design_or_rows.n
    else:
        blocks = list(design_or_rows)
        if not blocks:
            return True
        n = blocks[0].n if n is None else n
        rows = np.array([b.rows for b in blocks], dtype=np.int64)
    if len(rows) < 2:
        return True
    k = rows.shape[1]
    if t > k:
        return True
    idx = np.concatenate(list(_shard_indices(rows, n, k, t)))
    return len(np.unique(idx)) == len(idx)


def min_distance(blocks: list[Subspace]) -> int:
    """Minimum pairwise subspace distance (quadratic; small inputs)."""
    best = None
    for i in range(len(blocks)):
        for j in range(i + 1, len(blocks)):
            d = blocks[i].distance(blocks[j])
            best = d if best is None else min(best, d)
    return best


def naive_verify_cover(design: CoveringDesign) -> CoverageReport:
    """Reference checker: scan every block for every r-subspace."""
    from .subspace import enum_grassmannian

    blocks = design.blocks
    total = covered = 0
    first = None
    for y in enum_grassmannian(design.n, design.r):
        total += 1
        if any(b.contains(y) for b in blocks):
            covered += 1
        elif first is None:
            first = y
    return CoverageReport(total, covered, total - covered, first)
