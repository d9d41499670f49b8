from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qcover import constructions as C
from qcover.bounds import (
    BoundTable,
    best_bounds,
    covering_lower,
    de_caen_lower,
    density,
    density_of_size,
    eisfeld_metsch_lower,
    exact_values,
    metsch_upper,
    schonheim_lower,
)
from qcover.reference_tables import REFERENCE, parse_cell
from qcover.subspace import gaussian


def test_covering_bound():
    k = 5
    assert covering_lower(2 * k, k, 2) == (1 << 2 * k) + 3 * (1 << k) + 5
    assert covering_lower(7, 3, 2) == 381
    assert covering_lower(6, 4, 4) == gaussian(6, 4)


def test_schonheim():
    assert schonheim_lower(6, 3, 2) == 99
    assert schonheim_lower(8, 4, 2) == 323
    for n in range(2, 9):
        for k in range(1, n + 1):
            assert schonheim_lower(n, k, 1) == -(-((1 << n) - 1) // ((1 << k) - 1))


@settings(max_examples=50, deadline=None)
@given(st.integers(3, 10).flatmap(
    lambda n: st.tuples(st.just(n), st.integers(1, n - 1)).flatmap(
        lambda nk: st.tuples(st.just(nk[0]), st.just(nk[1]), st.integers(1, nk[1])))))
def test_schonheim_dominates_covering_bound(nkr):
    n, k, r = nkr
    assert schonheim_lower(n, k, r) >= covering_lower(n, k, r)


def test_de_caen():
    assert de_caen_lower(9, 5) == 108574
    assert de_caen_lower(10, 7) == 451631


def test_eisfeld_metsch():
    assert eisfeld_metsch_lower(2) == 27
    assert eisfeld_metsch_lower(3) == 84 + 15 == 99
    assert eisfeld_metsch_lower(4) == 371


def test_metsch():
    assert metsch_upper(2, 1) == 20 + 7 == 27
    assert metsch_upper(2, 2) == 80 + 3 * 14 == 122
    assert metsch_upper(3, 2) == 336 + 3 * 30 == 426
    with pytest.raises(ValueError):
        metsch_upper(2, 3)


def test_exact_values():
    assert exact_values(8, 6, 3) == 85
    assert exact_values(10, 8, 4) == 341
    for r in range(1, 8):
        assert exact_values(9, 8, r) == (1 << (r + 1)) - 1
    assert exact_values(7, 3, 2) is None


def test_reference_parser():
    assert parse_cell("s114-122m") == ("s", 114, 122, "m")
    assert parse_cell("p147p") == ("p", 147, 147, "p")
    assert parse_cell("s75-93ℓ").upper_marker == "ℓ"
    with pytest.raises(ValueError):
        parse_cell("114")
    assert sum(len(v) for v in REFERENCE.values()) == sum((n - 1) * n // 2 for n in range(5, 11))


@pytest.fixture(scope="module")
def table():
    return best_bounds(10)


def test_table_n7_matches_reference(table):
    for (k, r), ref in REFERENCE[7].items():
        c = table.cell(7, k, r)
        assert (c.lower_marker, c.lower, c.upper, c.upper_marker) == tuple(ref), (k, r)


def test_table_n6_matches_reference(table):
    for (k, r), ref in REFERENCE[6].items():
        c = table.cell(6, k, r)
        assert (c.lower, c.upper) == (ref.lower, ref.upper)


def test_selected_cells(table):
    c = table.cell(10, 5, 3)
    assert (c.lower, c.upper, c.upper_marker) == (41613, 45230, "i")
    c = table.cell(9, 4, 2)
    assert (c.upper, c.upper_marker) == (1325, "i")
    assert table.cell(10, 8, 4).label() == "s341n"


def test_table_is_a_fixed_point(table):
    again = table.recompute()
    assert all(again.cells[key] == cell for key, cell in table.cells.items())


def test_lower_never_exceeds_upper(table):
    for c in table:
        assert c.lower <= c.upper


def test_table_limits():
    with pytest.raises(ValueError):
        BoundTable(13)


def test_density():
    d = C.simple_cmrd(3)
    assert density(d) == Fraction(106, 93)
    assert density_of_size(93, 6, 3, 2) == 1
    assert density(C.point_cover(6, 2)) == 1
