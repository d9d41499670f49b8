"""Upper-bound constructions for C_2(n,k,r).

Conventions: a vector of F_2^n with an ell-bit prefix x and suffix w is
``x << (n - ell) | w``.  Every public builder verifies its output unless
called with ``verify=False``; verified designs carry ``verified=True``.
"""

from __future__ import annotations

import logging

import numpy as np

from .design import CoveringDesign, DesignError, merge
from .field import tower
from .rankmetric import lifted_mrd_rows
from .spreads import (
    coset_block,
    field_spread,
    lengthen,
    normal_spread_cover,
    parallelism_g2_4_2,
    s_j_blocks,
    spread_translate,
)
from .subspace import (
    Subspace,
    apply_linear,
    enum_grassmannian,
    full_space,
    gaussian,
    grassmannian_array,
    inside_mask,
    linear_map_images,
    prefix_space,
    rref_array,
    span,
    unit,
)
from .verify import require_cover

log = logging.getLogger(__name__)

__all__ = [
    "all_subspaces", "point_cover", "hyperplane_cover", "lengthen",
    "recursive_construction", "simple_cmrd", "cover_7_3_2", "improved_cmrd",
    "cmrd_chain", "cor_15_size", "cover_8_4_3", "cover_7_5_3",
    "improved_cmrd_r3", "cover_10_5_3", "best_hyperplane", "normal_spread_cover",
]

MAX_ALL_BLOCKS = 5_000_000


def _finish(design: CoveringDesign, verify: bool) -> CoveringDesign:
    return require_cover(design) if verify else design


def _embed_rows(subspaces, n: int, shift: int = 0) -> np.ndarray:
    return np.array([[row << shift for row in s.rows] for s in subspaces],
                    dtype=np.int64)


# ---------------------------------------------------------------------------
# exact families
# ---------------------------------------------------------------------------

def all_subspaces(n: int, k: int, r: int | None = None, verify: bool = False) -> CoveringDesign:
    """All of G_2(n,k); covers every r <= k trivially."""
    r = k if r is None else r
    if gaussian(n, k) > MAX_ALL_BLOCKS:
        raise DesignError(f"G_2({n},{k}) has {gaussian(n, k)} blocks; refusing to build")
    d = CoveringDesign.from_rows(n, k, r, grassmannian_array(n, k), provenance="a",
                                 canonical=True)
    return _finish(d, verify)


def _bottom_point_cover(k: int, b: int) -> list[Subspace]:
    """2^b + 1 k-subspaces of F_2^{k+b} covering every point (0 < b < k).

    Pull back a b-spread of the quotient by F = <last k-b unit vectors>.
    """
    n = k + b
    low = [1 << t for t in range(k - b)]
    return [span([row << (k - b) for row in s.rows] + low, n)
            for s in field_spread(2 * b, b)]


def point_cover(n: int, k: int, verify: bool = True) -> CoveringDesign:
    """C_2(n,k,1) of size ceil((2^n-1)/(2^k-1)).

    With n = ak + b: a k-spread when b = 0; otherwise a bottom cover of the
    last k+b coordinates, and for each layer N = (i+1)k + b the lifted
    rank-distance-k code partitioning the points of F_2^N with nonzero
    leading k-prefix.
    """
    if not 1 <= k <= n:
        raise DesignError(f"invalid parameters n={n}, k={k}")
    a, b = divmod(n, k)
    if b == 0:
        blocks = [s.rows for s in field_spread(n, k)]
        rows = np.array(blocks, dtype=np.int64)
    else:
        parts = [_embed_rows(_bottom_point_cover(k, b), n)]
        for i in range(1, a):
            parts.append(lifted_mrd_rows((i + 1) * k + b, k, k))
        rows = np.concatenate(parts)
    d = CoveringDesign.from_rows(n, k, 1, rows, provenance="p", canonical=True)
    return _finish(d, verify)


def hyperplane_cover(n: int, r: int, verify: bool = True) -> CoveringDesign:
    """The 2^{r+1}-1 hyperplanes containing F = <e_1, ..., e_{n-r-1}>."""
    if not 1 <= r <= n - 1:
        raise DesignError(f"hyperplane cover needs 1 <= r <= n-1, got n={n}, r={r}")
    blocks = [span([p], n).dual() for p in range(1, 1 << (r + 1))]
    d = CoveringDesign.from_subspaces(n, n - 1, r, blocks, provenance="q")
    d = d.annotate("U", blocks[0])
    return _finish(d, verify)


def best_hyperplane(design: CoveringDesign) -> tuple[Subspace, int]:
    """Hyperplane containing the most blocks (first in point order on ties)."""
    best = None
    for p in range(1, 1 << design.n):
        h = span([p], design.n).dual()
        c = design.count_inside(h)
        if best is None or c > best[1]:
            best = (h, c)
    return best


# ---------------------------------------------------------------------------
# recursive constructions
# ---------------------------------------------------------------------------

def recursive_construction(s1: CoveringDesign, s2: CoveringDesign,
                           verify: bool = True) -> CoveringDesign:
    """C(n,k,r) from S1 = C(n-1,k,r) and S2 = C(n-1,k-1,r-1).

    S1 blocks become X x {0}; each S2 block X gives (X x {0}) + <(x,1)> for
    the 2^{n-k} coset representatives x of X (vectors vanishing on X's
    pivot columns).  Annotated with the hyperplane {last coordinate = 0},
    which holds exactly the S1 blocks.
    """
    m = s1.n
    n, k, r = m + 1, s1.k, s1.r
    if (s2.n, s2.k, s2.r) != (m, k - 1, r - 1):
        raise DesignError(
            f"cannot combine C({s1.n},{s1.k},{s1.r}) with C({s2.n},{s2.k},{s2.r})")
    part1 = s1.rows << 1
    parts = [part1]
    if len(s2):
        x = s2.rows
        nfree = n - k
        pivmask = np.zeros(len(x), dtype=np.int64)
        for j in range(x.shape[1]):
            pivmask |= np.int64(1) << (np.frexp(x[:, j].astype(np.float64))[1] - 1)
        # free positions of each block, ascending
        free_pos = np.zeros((len(x), nfree), dtype=np.int64)
        cnt = np.zeros(len(x), dtype=np.int64)
        for bit in range(m):
            is_free = ((pivmask >> bit) & 1) == 0
            free_pos[is_free, cnt[is_free]] = bit
            cnt += is_free
        reps = np.zeros((len(x), 1 << nfree), dtype=np.int64)
        code = np.arange(1 << nfree, dtype=np.int64)
        for t in range(nfree):
            reps |= ((code >> t) & 1)[None, :] << free_pos[:, t:t + 1]
        shifted = np.repeat(x << 1, 1 << nfree, axis=0)
        extra = (reps.reshape(-1, 1) << 1) | 1
        rows2, _ = rref_array(np.concatenate([shifted, extra], axis=1), n)
        parts.append(rows2)
    d = CoveringDesign.from_rows(n, k, r, np.concatenate(parts), provenance="r",
                                 canonical=True)
    d = d.annotate("U", span([1 << b for b in range(1, n)], n))
    return _finish(d, verify)


def simple_cmrd(k: int, verify: bool = True) -> CoveringDesign:
    """C_2(2k,k,2) of size 2^{2k} + 6(2^k - 1).

    Annotated with U = {first coordinate 0}, which holds the S_j blocks of
    the 2^{k-1} - 1 prefixes alpha^j with leading bit 0.
    """
    if k < 3:
        raise DesignError("simple_cmrd needs k >= 3")
    n = 2 * k
    F = tower(k)
    extra = [s for j in range(F.order) for s in s_j_blocks(k, j, F)]
    d = merge(n, k, 2, [lifted_mrd_rows(n, k, k - 1), _embed_rows(extra, n)],
              provenance="c")
    d = d.annotate("U", prefix_space(n, 1))
    return _finish(d, verify)


def cover_7_3_2(parallelism=None, verify: bool = True) -> CoveringDesign:
    """C_2(7,3,2) of size 396: lifted MRD plus the 7 spread translates.

    The translate of spread P_i is placed on V_0 + V_{alpha^i}.
    Annotated with U = {first coordinate 0}.
    """
    P = parallelism or parallelism_g2_4_2()
    F = tower(3)
    extra = []
    for i in range(7):
        z = F.alpha_pow(i)
        for coset in spread_translate(P, i).cosets:
            s = coset_block(z, coset, 4, 7)
            if s.dim != 3:
                raise AssertionError("translate block is not 3-dimensional")
            extra.append(s)
    d = merge(7, 3, 2, [lifted_mrd_rows(7, 3, 2), _embed_rows(extra, 7)],
              provenance="f")
    d = d.annotate("U", prefix_space(7, 1))
    return _finish(d, verify)


def _phi_images(domain: list[int], targets: list[int], m: int) -> list[int]:
    return linear_map_images(domain, targets, m)


def improved_cmrd(n: int, k: int, base: CoveringDesign, label: str = "U",
                  verify: bool = True) -> CoveringDesign:
    """C_2(n,k,2) from a C_2(n-k+1,k,2) with a hyperplane U holding c blocks.

    For each nonzero prefix x the base is copied onto V_0 + V_x by a linear
    map sending U onto V_0; blocks inside U are placed only once.  Size
    2^{2(n-k)} + (2^k-1)|S| - (2^k-2)c.  Annotated with U' = {first
    coordinate 0}.
    """
    m = n - k + 1
    if n < 2 * k:
        raise DesignError(f"improved_cmrd needs n >= 2k, got n={n}, k={k}")
    if (base.n, base.k, base.r) != (m, k, 2):
        raise DesignError(f"base must be C_2({m},{k},2), got C_2({base.n},{base.k},{base.r})")
    ann = base.annotations.get(label)
    if ann is None:
        raise DesignError("structural constant c required")
    u = ann.subspace
    if u.n != m or u.dim != m - 1:
        raise DesignError("annotation must be a hyperplane of the base ambient")
    w = next(unit(m, j) for j in range(1, m + 1) if unit(m, j) not in u)
    domain = [w] + list(u.rows)
    suffix = [1 << (m - 2 - i) for i in range(m - 1)]
    inside = inside_mask(base.rows, u)
    if int(inside.sum()) != ann.count:
        raise DesignError("annotation count disagrees with the base design")
    outside_rows = base.rows[~inside]
    parts = [lifted_mrd_rows(n, k, k - 1)]
    for x in range(1, 1 << k):
        images = _phi_images(domain, [x << (n - k)] + suffix, m)
        src = base.rows if x == 1 else outside_rows
        parts.append(rref_array(apply_linear(images, src), n)[0])
    d = merge(n, k, 2, parts, provenance="i")
    expect = (1 << (2 * (n - k))) + ((1 << k) - 1) * len(base) - ((1 << k) - 2) * ann.count
    if len(d) != expect:
        raise DesignError(f"improved_cmrd produced {len(d)} blocks, expected {expect}")
    d = d.annotate("U", prefix_space(n, 1))
    return _finish(d, verify)


def cmrd_chain(levels: int, start: CoveringDesign | None = None,
               verify: bool = True) -> list[CoveringDesign]:
    """[C_2(7,3,2), C_2(9,3,2), ...]: iterate improved_cmrd from the 396 design."""
    d = start or cover_7_3_2(verify=verify)
    out = [d]
    for _ in range(levels - 1):
        d = improved_cmrd(d.n + d.k - 1, d.k, d, verify=verify)
        out.append(d)
    return out


def cor_15_size(n: int) -> int:
    """Closed-form size of the C_2(2n+1,3,2) chain started at n = 3."""
    if n < 3:
        raise ValueError("the chain starts at n = 3")
    a = 1 << (2 * n - 2)
    total = (1 << (4 * n - 4)) + 7 * (a * (a - 1)) // 12
    for i in range(n - 3):
        b = 1 << (2 * i + 4)
        total += b * (b - 1) // 4
    return total


# ---------------------------------------------------------------------------
# r = 3
# ---------------------------------------------------------------------------

def cover_8_4_3(parallelism=None, verify: bool = True) -> CoveringDesign:
    """C_2(8,4,3) of size 6897 = 4096 + 2800 + 1.

    For every line {0,x,y,z} of spread P_i (prefixes) and every parallel
    class of its translate: the 16 blocks <(x,A), (y,b)> with A, B in the
    class and b in B.
    """
    P = parallelism or parallelism_g2_4_2()
    extra = []
    for i in range(7):
        tr = spread_translate(P, i)
        for line in P[i]:
            x, y = sorted(line.points())[1:3]
            for cls in tr.classes:
                for A in cls:
                    for B in cls:
                        vecs = [(x << 4) | a for a in A] + [(y << 4) | B[0]]
                        s = span(vecs, 8)
                        if s.dim != 4:
                            raise AssertionError("C1 block is not 4-dimensional")
                        extra.append(s)
    d = merge(8, 4, 3, [lifted_mrd_rows(8, 4, 2), _embed_rows(extra, 8),
                        np.array([prefix_space(8, 4).rows], dtype=np.int64)],
              provenance="g")
    return _finish(d, verify)


def _rotate_last_to_front(rows: np.ndarray, n: int) -> np.ndarray:
    return ((rows & 1) << (n - 1)) | (rows >> 1)


def cover_7_5_3(verify: bool = True) -> CoveringDesign:
    """The structured C_2(7,5,3) of size 99.

    Construction 1 on S1 = the 15 hyperplanes of F_2^6 through <e_1,e_2> and
    S2 = the dual normal spread C_2(6,4,2), which has one block in
    {y_1 = 0}; the new coordinate is then moved to the front, so the
    2-prefix is (t, y_1).  Annotations: U0 = V_0^{(7,2)} and the three
    hyperplanes V_0 + V_p through it, labelled U1, U2, U3 by increasing
    block count.
    """
    s2 = normal_spread_cover(3, 2, 0, verify=verify)
    s1 = hyperplane_cover(6, 3, verify=verify)
    rec = recursive_construction(s1, s2, verify=False)
    rows, _ = rref_array(_rotate_last_to_front(rec.rows, 7), 7)
    d = CoveringDesign.from_rows(7, 5, 3, rows, provenance="r")
    d = d.annotate("U0", prefix_space(7, 2))
    hyper = sorted((d.count_inside(prefix_space(7, 2, [p])), p) for p in (1, 2, 3))
    for label, (_, p) in zip(("U1", "U2", "U3"), hyper):
        d = d.annotate(label, prefix_space(7, 2, [p]))
    return _finish(d, verify)


def _assign_prefixes(k: int):
    """For each 2-subspace of F_2^k, the prefixes matched with (U1, U2, U3).

    Greedy in enumeration order: U1 goes to the smallest point not yet
    matched with U1 (else the smallest point).  Returns the assignments and
    for each nonzero x the index of the first subspace matching x with U1.
    """
    assign, designated = [], {}
    for idx, w in enumerate(enum_grassmannian(k, 2)):
        pts = sorted(w.points()[1:])
        fresh = [p for p in pts if p not in designated]
        a1 = fresh[0] if fresh else pts[0]
        a2, a3 = [p for p in pts if p != a1]
        if a1 not in designated:
            designated[a1] = idx
        assign.append((a1, a2, a3))
    missing = set(range(1, 1 << k)) - set(designated)
    if missing:
        raise DesignError(f"prefixes {sorted(missing)} never matched with U1")
    return assign, designated


def improved_cmrd_r3(n: int, k: int, base: CoveringDesign,
                     inner: CoveringDesign | None = None, refine: bool = False,
                     verify: bool = True) -> CoveringDesign:
    """C_2(n,k,3) from a C_2(n-k+2,k,3) with subspaces U0 in U1, U2, U3.

    T is the lifted code of rank distance k-2.  For each 2-subspace
    {0,x,y,z} of prefixes, a linear map sends U0 to V_0 and U1, U2, U3 to
    V_0 + V_x, V_y, V_z; C1 is the image of the blocks outside all U_i, C2
    the image of the U1-blocks (not in U0) under one designated map per x,
    C3 the inner C_2(n-k,k,3) on V_0.

    ``refine`` drops C3 and instead scales the suffix of the designated map
    for the i-th prefix by alpha^i, so the U1-blocks' V_0 parts run through
    a multiplier orbit.
    """
    m = n - k + 2
    ell = n - k
    if n < 2 * k:
        raise DesignError(f"improved_cmrd_r3 needs n >= 2k, got n={n}, k={k}")
    if (base.n, base.k, base.r) != (m, k, 3):
        raise DesignError(f"base must be C_2({m},{k},3)")
    try:
        anns = [base.annotations[f"U{i}"] for i in range(4)]
    except KeyError:
        raise DesignError("structural constants c0..c3 required") from None
    u0 = anns[0].subspace
    hyper = sorted(anns[1:], key=lambda a: a.count)
    c0, (c1, c2, c3) = anns[0].count, [a.count for a in hyper]
    if not c0 <= c1:
        raise DesignError("c0 must not exceed c1")
    if u0.dim != ell or any(a.subspace.dim != ell + 1 for a in hyper):
        raise DesignError("U0 must have dimension n-k and U1..U3 dimension n-k+1")
    for i in range(3):
        for j in range(i + 1, 3):
            if hyper[i].subspace.meet(hyper[j].subspace) != u0:
                raise DesignError("U_i must pairwise meet in U0")
    pick = lambda s: next(v for v in s.rows if v not in u0)
    u1, u2 = pick(hyper[0].subspace), pick(hyper[1].subspace)
    domain = [u1, u2] + list(u0.rows)
    F = tower(ell)
    suffix_units = [1 << (ell - 1 - i) for i in range(ell)]
    masks = [inside_mask(base.rows, a.subspace) for a in hyper]
    c1_rows = base.rows[masks[0] & ~inside_mask(base.rows, u0)]
    outside = base.rows[~(masks[0] | masks[1] | masks[2])]

    assign, designated = _assign_prefixes(k)
    beta = {idx: 1 for idx in range(len(assign))}
    if refine:
        if (1 << k) - 1 > F.order:
            raise DesignError("not enough distinct multipliers for the refinement")
        for t, x in enumerate(sorted(designated)):
            beta[designated[x]] = F.alpha_pow(t)

    def images(idx):
        a1, a2, _ = assign[idx]
        b = beta[idx]
        targets = [a1 << ell, a2 << ell] + [F.mul(b, e) for e in suffix_units]
        return linear_map_images(domain, targets, m)

    parts = [lifted_mrd_rows(n, k, k - 2)]
    for idx in range(len(assign)):
        parts.append(rref_array(apply_linear(images(idx), outside), n)[0])
    for x in sorted(designated):
        parts.append(rref_array(apply_linear(images(designated[x]), c1_rows), n)[0])
    if inner is not None and not refine:
        if (inner.n, inner.k, inner.r) != (ell, k, 3):
            raise DesignError(f"inner design must be C_2({ell},{k},3)")
        parts.append(inner.rows)
    d = merge(n, k, 3, parts, provenance="i")
    expect = (1 << (3 * ell)) + gaussian(k, 2) * (len(base) - c1 - c2 - c3 + 2 * c0) \
        + ((1 << k) - 1) * (c1 - c0) + (len(inner) if inner is not None and not refine else 0)
    if len(d) != expect:
        raise DesignError(f"improved_cmrd_r3 produced {len(d)} blocks, expected {expect}")
    return _finish(d, verify)


class RefinementFallback(UserWarning):
    pass


def cover_10_5_3(refine: bool = True, verify: bool = True) -> CoveringDesign:
    """C_2(10,5,3) of size 45230, or the verified 45231 design as a fallback.

    The fallback carries provenance "i:fallback" so callers can report it.
    """
    from .verify import verify_cover

    base = cover_7_5_3(verify=verify)
    if refine:
        d = improved_cmrd_r3(10, 5, base, refine=True, verify=False)
        report = verify_cover(d)
        if report.is_cover:
            return d.with_(verified=True)
        log.warning("refined C_2(10,5,3) leaves %d 3-subspaces uncovered; "
                    "falling back to 45231", report.uncovered)
    inner = CoveringDesign.from_subspaces(5, 5, 3, [full_space(5)], provenance="a")
    d = improved_cmrd_r3(10, 5, base, inner=inner, verify=verify)
    return d.with_(provenance="i:fallback" if refine else "i")
