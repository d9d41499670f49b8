"""The CoveringDesign container.

Blocks are kept as an ``(count, k)`` int64 array of canonical RREF rows,
sorted lexicographically, so set equality of designs is array equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Iterator

import numpy as np

from .subspace import Subspace, inside_mask, rref_array


class DesignError(ValueError):
    pass


@dataclass(frozen=True)
class Annotation:
    """A designated subspace and how many blocks lie inside it."""

    subspace: Subspace
    count: int


@dataclass(frozen=True, eq=False)
class CoveringDesign:
    n: int
    k: int
    r: int
    rows: np.ndarray
    provenance: str = ""
    annotations: dict[str, Annotation] = field(default_factory=dict)
    verified: bool = False

    @classmethod
    def from_rows(cls, n, k, r, rows, provenance="", annotations=None,
                  canonical=False, allow_duplicates=False):
        """Build a design from block bases.

        Rows that are not already canonical are re-reduced.  Duplicate
        blocks raise unless ``allow_duplicates``; then they are dropped.
        """
        if not 0 <= r <= k <= n:
            raise DesignError(f"invalid parameters n={n}, k={k}, r={r}")
        rows = np.asarray(rows, dtype=np.int64).reshape(-1, k)
        if rows.size and (rows.min() < 0 or rows.max() >> n):
            raise DesignError(f"block rows outside F_2^{n}")
        if not canonical and len(rows):
            rows, ranks = rref_array(rows, n)
            if (ranks != k).any():
                raise DesignError(f"a block is not {k}-dimensional")
        if len(rows):
            unique = np.unique(rows, axis=0)
        else:
            unique = rows
        if len(unique) != len(rows) and not allow_duplicates:
            raise DesignError(
                f"construction produced {len(rows) - len(unique)} duplicate blocks")
        return cls(n, k, r, unique, provenance, dict(annotations or {}))

    @classmethod
    def from_subspaces(cls, n, k, r, blocks: Iterable[Subspace], **kw):
        blocks = list(blocks)
        for b in blocks:
            if b.n != n or b.dim != k:
                raise DesignError(f"block {b} is not a {k}-subspace of F_2^{n}")
        rows = np.array([b.rows for b in blocks], dtype=np.int64).reshape(-1, k)
        return cls.from_rows(n, k, r, rows, canonical=True, **kw)

    def __len__(self):
        return len(self.rows)

    def __iter__(self) -> Iterator[Subspace]:
        for row in self.rows.tolist():
            yield Subspace(self.n, tuple(row))

    @property
    def blocks(self) -> list[Subspace]:
        return list(self)

    def __eq__(self, other):
        if not isinstance(other, CoveringDesign):
            return NotImplemented
        return ((self.n, self.k, self.r) == (other.n, other.k, other.r)
                and np.array_equal(self.rows, other.rows))

    def __hash__(self):
        return hash((self.n, self.k, self.r, self.rows.tobytes()))

    def __repr__(self):
        flag = ", verified" if self.verified else ""
        return (f"CoveringDesign(C_2({self.n},{self.k},{self.r}), "
                f"{len(self)} blocks, prov={self.provenance!r}{flag})")

    def with_(self, **changes) -> "CoveringDesign":
        return replace(self, **changes)

    def annotate(self, label: str, u: Subspace) -> "CoveringDesign":
        anns = dict(self.annotations)
        anns[label] = Annotation(u, structural_counts(self, u))
        return replace(self, annotations=anns)

    def count_inside(self, u: Subspace) -> int:
        return structural_counts(self, u)


def structural_counts(design: CoveringDesign, u: Subspace) -> int:
    """Number of blocks wholly contained in u."""
    if u.n != design.n:
        raise DesignError(f"ambient mismatch: {u.n} != {design.n}")
    if not len(design):
        return 0
    return int(inside_mask(design.rows, u).sum())


def merge(n, k, r, parts, provenance="", annotations=None) -> CoveringDesign:
    """Union of canonical row arrays; a self-collision is an error."""
    rows = np.concatenate([np.asarray(p, dtype=np.int64).reshape(-1, k) for p in parts])
    return CoveringDesign.from_rows(n, k, r, rows, provenance, annotations,
                                    canonical=True)
