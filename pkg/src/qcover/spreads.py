"""Spreads, normal-spread coverings, the parallelism of G_2(4,2) and B-sets."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .design import CoveringDesign
from .field import FieldTower, scale_set, tower
from .subspace import Subspace, enum_grassmannian, prefix_space, rref, span
from .verify import require_cover


def field_spread(n: int, k: int) -> list[Subspace]:
    """The Desarguesian k-spread {beta * GF(2^k)} of F_2^n = GF(2^n)."""
    if k < 1 or n % k:
        raise ValueError("spread requires k | n")
    F = tower(n)
    step = F.order // ((1 << k) - 1)
    subfield = [F.alpha_pow(step * i) for i in range(k)]
    out = []
    for i in range(step):
        rows = rref(scale_set(F.alpha_pow(i), subfield, F))
        if len(rows) != k:
            raise AssertionError("subfield powers are dependent")
        out.append(Subspace(n, rows))
    return sorted(out, key=lambda s: s.rows)


def _design(n, k, r, blocks, provenance):
    return CoveringDesign.from_subspaces(n, k, r, blocks, provenance=provenance)


def lengthen(design: CoveringDesign, provenance: str | None = None,
             verify: bool = True) -> CoveringDesign:
    """C(n,k,r) -> C(n+1,k+1,r): X -> X (+) <e_{n+1}> with F_2^n as the first n coordinates."""
    rows = design.rows << 1
    ones = np.ones((len(rows), 1), dtype=np.int64)
    out = np.concatenate([rows, ones], axis=1)
    d = CoveringDesign.from_rows(design.n + 1, design.k + 1, design.r, out,
                                 provenance=provenance or design.provenance,
                                 canonical=True)
    return require_cover(d) if verify else d


def normal_spread_cover(v: int, m: int, delta: int = 0, verify: bool = True) -> CoveringDesign:
    """C_2(vm+delta, vm-m+delta, v-1) of size (2^{vm}-1)/(2^m-1).

    Orthogonal complements of the field-reduction m-spread of F_2^{vm},
    lengthened delta times.  The unlengthened design is annotated with the
    hyperplane V_0^{(vm,1)}: a point lies in exactly one spread element, so
    every hyperplane contains exactly one block.
    """
    if v < 2 or m < 2 or delta < 0 or v * m + delta > 32:
        raise ValueError(f"invalid normal spread parameters v={v}, m={m}, delta={delta}")
    n = v * m
    blocks = [s.dual() for s in field_spread(n, m)]
    d = _design(n, n - m, v - 1, blocks, "n")
    d = d.annotate("U", prefix_space(n, 1))
    for _ in range(delta):
        d = lengthen(d, "n", verify=False)
    return require_cover(d) if verify else d


# ---------------------------------------------------------------------------
# the parallelism of G_2(4,2)
# ---------------------------------------------------------------------------

def _point_mask(s: Subspace) -> int:
    mask = 0
    for p in s.points()[1:]:
        mask |= 1 << p
    return mask


def parallelisms() -> Iterator[list[list[Subspace]]]:
    """All partitions of G_2(4,2) into 7 spreads, lexicographically.

    Each spread starts with the smallest subspace not yet used; members are
    taken in enumeration order.
    """
    subs = list(enum_grassmannian(4, 2))
    masks = [_point_mask(s) for s in subs]
    full = sum(1 << p for p in range(1, 16))
    used = [False] * len(subs)
    spreads: list[list[int]] = []

    def extend(current, covered):
        if covered == full:
            spreads.append(current)
            if len(spreads) == 7:
                yield [[subs[i] for i in sp] for sp in spreads]
            else:
                first = used.index(False)
                used[first] = True
                yield from extend([first], masks[first])
                used[first] = False
            spreads.pop()
            return
        for i in range(current[-1] + 1, len(subs)):
            if not used[i] and not masks[i] & covered:
                used[i] = True
                yield from extend(current + [i], covered | masks[i])
                used[i] = False

    used[0] = True
    yield from extend([0], masks[0])


@dataclass(frozen=True)
class Parallelism42:
    spreads: tuple[tuple[Subspace, ...], ...]

    def __post_init__(self):
        seen = set()
        for sp in self.spreads:
            if len(sp) != 5:
                raise ValueError("each spread of F_2^4 has 5 lines")
            covered = 0
            for s in sp:
                m = _point_mask(s)
                if covered & m:
                    raise ValueError("spread members intersect")
                covered |= m
            seen.update(sp)
        if len(self.spreads) != 7 or len(seen) != 35:
            raise ValueError("not a partition of G_2(4,2)")

    def __getitem__(self, i):
        return self.spreads[i]

    def __len__(self):
        return len(self.spreads)


_PARALLELISM = None


def parallelism_g2_4_2(which: int = 0) -> Parallelism42:
    """The ``which``-th parallelism in search order (0 = lexicographically least)."""
    global _PARALLELISM
    if which == 0 and _PARALLELISM is not None:
        return _PARALLELISM
    for idx, found in enumerate(parallelisms()):
        if idx == which:
            p = Parallelism42(tuple(tuple(sp) for sp in found))
            if which == 0:
                _PARALLELISM = p
            return p
    raise IndexError(f"only {idx + 1} parallelisms exist")


@dataclass(frozen=True)
class SpreadTranslate:
    """The 20 cosets of the lines of one spread, grouped by line."""

    index: int
    lines: tuple[Subspace, ...]
    classes: tuple[tuple[tuple[int, ...], ...], ...]

    @property
    def cosets(self) -> list[tuple[int, ...]]:
        return [c for cls in self.classes for c in cls]


def spread_translate(p: Parallelism42, i: int) -> SpreadTranslate:
    if not 0 <= i < len(p):
        raise IndexError(f"spread index {i} out of range")
    classes = []
    for line in p[i]:
        pts = line.points()
        reps, seen = [], set()
        for u in range(16):
            if u not in seen:
                coset = tuple(sorted(u ^ a for a in pts))
                seen.update(coset)
                reps.append(coset)
        classes.append(tuple(reps))
    return SpreadTranslate(i, tuple(p[i]), tuple(classes))


def coset_block(z: int, coset, ell: int, n: int) -> Subspace:
    """<(z, a) : a in coset> with z placed on the leading n - ell coordinates."""
    return span([(z << ell) | a for a in coset], n)


def translate_v0_closure(p: Parallelism42, m: int = 3) -> set[Subspace]:
    """{<(alpha^i, a) : a in A> cap V_0 : A a coset of P_i}, as subspaces of F_2^4."""
    F = tower(m)
    n = m + 4
    v0 = prefix_space(n, m)
    out = set()
    for i in range(len(p)):
        for coset in spread_translate(p, i).cosets:
            block = coset_block(F.alpha_pow(i), coset, 4, n)
            out.add(Subspace(4, (block & v0).rows))
    return out


# ---------------------------------------------------------------------------
# B-sets and the S_j families
# ---------------------------------------------------------------------------

def b_sets(k: int) -> list[list[int]]:
    """B_1..B_6: vectors of F_2^k classified by their two leading coordinates."""
    if k < 2:
        raise ValueError("B-sets need k >= 2")
    vecs = range(1 << k)
    first = lambda x: x >> (k - 1) & 1
    second = lambda x: x >> (k - 2) & 1
    return [
        [x for x in vecs if first(x) == 0],
        [x for x in vecs if first(x) == 1],
        [x for x in vecs if second(x) == 0],
        [x for x in vecs if second(x) == 1],
        [x for x in vecs if first(x) == second(x)],
        [x for x in vecs if first(x) != second(x)],
    ]


def s_j_blocks(k: int, j: int, field: FieldTower | None = None) -> list[Subspace]:
    """<(alpha^j, alpha^j x) : x in B_i> for i = 1..6, in F_2^{2k}."""
    F = field or tower(k)
    if F.degree != k:
        raise ValueError("tower degree must equal k")
    if not 0 <= j < F.order:
        raise ValueError(f"j must lie in 0..{F.order - 1}")
    z = F.alpha_pow(j)
    out = []
    for b in b_sets(k):
        s = span([(z << k) | F.mul(z, x) for x in b], 2 * k)
        if s.dim != k:
            raise AssertionError(f"S_j block of dimension {s.dim}")
        out.append(s)
    return out
