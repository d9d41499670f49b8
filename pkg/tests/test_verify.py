import numpy as np
import pytest

from qcover import constructions as C
from qcover.design import CoveringDesign
from qcover.rankmetric import lifted_mrd
from qcover.spreads import field_spread
from qcover.subspace import gaussian, span
from qcover.verify import (
    CoverageError,
    MemoryCapExceeded,
    coverage_counts,
    multiplicity_histogram,
    naive_verify_cover,
    packing_check,
    require_cover,
    v0_dim_filter,
    verify_cover,
)


def test_empty_design():
    d = CoveringDesign.from_rows(6, 3, 2, [])
    rep = verify_cover(d)
    assert rep.uncovered == rep.total_r_subspaces == gaussian(6, 2)
    assert not rep.is_cover
    with pytest.raises(CoverageError):
        require_cover(d)


def test_report_invariants():
    d = C.simple_cmrd(3)
    rep = verify_cover(d, histogram=True)
    assert rep.covered + rep.uncovered == rep.total_r_subspaces
    hist = rep.multiplicity_histogram
    # each distinct block contributes each of its r-subspaces once
    assert sum(m * c for m, c in hist.items()) == len(d) * gaussian(3, 2)
    assert "uncovered: 0" in rep.summary()


def test_truncated_design_reports_first_gap():
    d = C.cover_7_3_2()
    part = CoveringDesign.from_rows(7, 3, 2, d.rows[:-5], canonical=True)
    rep = verify_cover(part)
    assert rep.uncovered > 0
    assert not any(b.contains(rep.first_uncovered) for b in part)


@pytest.mark.parametrize("shards,workers", [(1, 1), (3, 1), (5, 2)])
def test_sharding_is_invisible(shards, workers):
    d = C.cover_8_4_3(verify=False)
    base = coverage_counts(d)
    assert np.array_equal(coverage_counts(d, shards=shards, workers=workers), base)
    rep = verify_cover(d, shards=shards, workers=workers)
    assert rep.is_cover


def test_order_independence():
    d = C.simple_cmrd(4, verify=False)
    shuffled = CoveringDesign(d.n, d.k, d.r, d.rows[::-1].copy())
    assert np.array_equal(coverage_counts(shuffled), coverage_counts(d))


def test_memory_cap():
    hp = CoveringDesign.from_rows(12, 11, 6, [])
    with pytest.raises(MemoryCapExceeded) as exc:
        verify_cover(hp, memory_cap=1 << 20)
    assert exc.value.required > exc.value.available


def test_filtered_histograms():
    d7, d9 = C.cmrd_chain(2)
    assert set(multiplicity_histogram(d9, v0_dim_filter(9, 3, 1))) == {1}
    d = CoveringDesign.from_subspaces(6, 2, 1, field_spread(6, 2))
    assert multiplicity_histogram(d) == {1: 63}


def test_packing():
    assert packing_check(field_spread(8, 4), 8)
    assert packing_check(lifted_mrd(7, 3, 2), t=2)
    x = span([0b1100, 0b0011], 4)
    assert not packing_check([x, x], 4)
    assert not packing_check(C.simple_cmrd(3), t=1)


@pytest.mark.parametrize("n,k,r", [(4, 2, 1), (5, 3, 2), (6, 3, 2), (5, 4, 3)])
def test_naive_agrees_on_covers_and_near_covers(n, k, r):
    from qcover.bounds import BoundTable, build_witness

    table = BoundTable(n)
    d = build_witness(table, n, k, r)
    for cut in (0, 1):
        part = CoveringDesign.from_rows(n, k, r, d.rows[cut:], canonical=True)
        a, b = verify_cover(part), naive_verify_cover(part)
        assert (a.covered, a.first_uncovered) == (b.covered, b.first_uncovered)
