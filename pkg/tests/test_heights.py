"""Weil and subscheme heights, closed forms, ratio series."""

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orbitgcd import heights, polyparse, projgeom
from orbitgcd.heights import (bcz_closed_form, bcz_exact_parts,
                              height_ratio_series, multiplicatively_dependent,
                              subscheme_height, weil_height)
from orbitgcd.projgeom import make_ideal, make_map, make_point


def ideal(*gens: str, arity: int = 3) -> projgeom.SubschemeIdeal:
    return make_ideal([polyparse.parse(g, arity) for g in gens])


def pmap(*comps: str, arity: int = 3) -> projgeom.RationalMap:
    return make_map([polyparse.parse(c, arity) for c in comps])


COORD_AXES = ideal("x0", "x1")


# ---------------------------------------------------------------------------
# Weil height


def test_weil_height_examples():
    assert weil_height(make_point((3, 2, 1))) == math.log(3)
    assert weil_height(make_point((1, 1, 1))) == 0.0
    assert weil_height(make_point((-7, 2, 1))) == math.log(7)


@settings(max_examples=60)
@given(st.lists(st.integers(-10 ** 9, 10 ** 9), min_size=3, max_size=3),
       st.integers(1, 10 ** 4))
def test_weil_height_representative_independent(coords, lam):
    if all(c == 0 for c in coords):
        coords[2] = 1
    a = weil_height(make_point(coords))
    b = weil_height(make_point([lam * c for c in coords]))
    assert a == b


# ---------------------------------------------------------------------------
# subscheme height


def test_coordinate_subscheme_closed_formula():
    # h_Y at (12 : 8 : 1) for Y = (x0, x1):
    # archimedean term log(12/12), gcd term log gcd(12, 8)
    hv = subscheme_height(COORD_AXES, make_point((12, 8, 1)))
    assert not hv.infinite
    assert hv.sup_norm == 12
    assert hv.arch_value == 12
    assert hv.gcd_value == 4
    assert hv.arch_part == pytest.approx(0.0, abs=1e-15)
    assert hv.gcd_part == math.log(4)
    assert hv.total == pytest.approx(math.log(4))


def test_point_on_subscheme_is_infinite():
    hv = subscheme_height(COORD_AXES, make_point((0, 0, 1)))
    assert hv.infinite
    assert hv.total is None and hv.arch_part is None and hv.gcd_part is None


def test_total_splits_and_gcd_part_nonnegative():
    rng = random.Random(7)
    for _ in range(300):
        coords = [rng.randint(-10 ** 6, 10 ** 6) for _ in range(3)]
        if coords[0] == 0 and coords[1] == 0:
            coords[0] = 1
        hv = subscheme_height(COORD_AXES, make_point(coords))
        assert not hv.infinite
        assert hv.gcd_part >= 0.0
        assert hv.total == pytest.approx(hv.arch_part + hv.gcd_part, abs=1e-12)


def test_mixed_degree_generators_pick_exact_minimum():
    # Y = (x0 - x2, x1^2 - x2^2) at (5 : 3 : 1):
    # candidates are log(5/|5-1|) and log(25/|9-1|); the first is smaller
    y = ideal("x0 - x2", "x1^2 - x2^2")
    hv = subscheme_height(y, make_point((5, 3, 1)))
    assert hv.arch_degree == 1
    assert hv.arch_value == 4
    assert hv.gcd_value == math.gcd(4, 8)
    assert hv.arch_part == pytest.approx(math.log(5) - math.log(4))
    assert hv.total == pytest.approx(math.log(5) - math.log(4) + math.log(4))


def test_generator_value_larger_than_sup_gives_negative_arch():
    # all coordinates 1 makes the generator sum exceed the sup norm
    y = ideal("x0 + x1 + x2")
    hv = subscheme_height(y, make_point((1, 1, 1)))
    assert hv.arch_part == pytest.approx(-math.log(3))
    assert hv.gcd_part == math.log(3)
    assert hv.total == pytest.approx(0.0, abs=1e-15)


@settings(max_examples=60)
@given(st.lists(st.integers(-10 ** 8, 10 ** 8), min_size=3, max_size=3),
       st.integers(1, 997))
def test_subscheme_height_representative_independent(coords, lam):
    if all(c == 0 for c in coords):
        coords[1] = 2
    y = ideal("x0 - x2", "x1 + 2*x2")
    a = subscheme_height(y, make_point(coords))
    b = subscheme_height(y, make_point([lam * c for c in coords]))
    assert a.infinite == b.infinite
    if not a.infinite:
        assert a.sup_norm == b.sup_norm
        assert a.gcd_value == b.gcd_value
        assert a.total == b.total


# ---------------------------------------------------------------------------
# closed forms for the diagonal map


def test_bcz_exact_parts_small_n():
    w = bcz_exact_parts(2, 3, 1)
    assert (w.sup_norm, w.gcd_value, w.arch_value) == (3, 1, 2)
    w = bcz_exact_parts(2, 3, 6)
    assert w.sup_norm == 729
    assert w.gcd_value == math.gcd(2 ** 6 - 1, 3 ** 6 - 1)
    assert w.gcd_value == 7
    assert w.arch_value == 728


def test_bcz_closed_form_values():
    row = bcz_closed_form(2, 3, 6)
    expected_hy = math.log(729) - math.log(728) + math.log(7)
    assert row.h == math.log(729)
    assert row.h_Y == pytest.approx(expected_hy, rel=1e-15)
    assert row.ratio == pytest.approx(expected_hy / math.log(729), rel=1e-15)


def test_bcz_closed_form_validates():
    with pytest.raises(ValueError):
        bcz_exact_parts(1, 3, 2)
    with pytest.raises(ValueError):
        bcz_exact_parts(2, 3, 0)


def test_bcz_closed_form_matches_subscheme_height():
    y = ideal("x0 - x2", "x1 - x2")
    for n in (1, 2, 5, 9, 17):
        pt = make_point((2 ** n, 3 ** n, 1))
        hv = subscheme_height(y, pt)
        row = bcz_closed_form(2, 3, n)
        parts = bcz_exact_parts(2, 3, n)
        assert hv.sup_norm == parts.sup_norm
        assert hv.gcd_value == parts.gcd_value
        assert hv.arch_value == parts.arch_value
        assert hv.total == pytest.approx(row.h_Y, rel=1e-12)
        assert weil_height(pt) == pytest.approx(row.h, rel=1e-15)


# ---------------------------------------------------------------------------
# multiplicative dependence


def test_multiplicative_dependence_table():
    dependent = [(2, 4), (4, 2), (4, 8), (8, 4), (9, 27), (4, 4), (2, 2),
                 (16, 8), (100, 1000)]
    independent = [(2, 3), (6, 12), (12, 18), (2, 6), (10, 100000000000 + 1)]
    for a, b in dependent:
        assert multiplicatively_dependent(a, b), (a, b)
    for a, b in independent:
        assert not multiplicatively_dependent(a, b), (a, b)


def test_multiplicative_dependence_powers_of_common_base():
    rng = random.Random(13)
    for _ in range(50):
        base = rng.randint(2, 50)
        i, j = rng.randint(1, 6), rng.randint(1, 6)
        assert multiplicatively_dependent(base ** i, base ** j)


# ---------------------------------------------------------------------------
# ratio series along orbits


def test_series_rows_and_ratio_definition():
    f = pmap("x0^2*x1", "x1^3", "x2^3")
    series = height_ratio_series(f, COORD_AXES, make_point((3, 2, 1)), 5)
    assert len(series.rows) == 6
    assert len(series.orbit_points) == 6
    for n, h, hv, ratio in series.rows:
        assert h == weil_height(series.orbit_points[n])
        if h > 0 and not hv.infinite:
            assert ratio == pytest.approx(hv.total / h)
        else:
            assert ratio is None


def test_series_ratio_none_at_height_zero():
    f = pmap("2*x0", "3*x1", "x2")
    y = ideal("x0 - x2", "x1 - x2")
    series = height_ratio_series(f, y, make_point((1, 1, 1)), 3)
    n0, h0, hv0, ratio0 = series.rows[0]
    assert h0 == 0.0
    assert hv0.infinite  # (1:1:1) lies on Y
    assert ratio0 is None
    # later rows have positive height and finite values
    n1, h1, hv1, ratio1 = series.rows[1]
    assert h1 > 0 and not hv1.infinite and ratio1 is not None


def test_series_truncates_with_orbit():
    f = pmap("x0^2*x1", "x1^3", "x2^3")
    series = height_ratio_series(f, COORD_AXES, make_point((1, 0, 0)), 4)
    assert series.rows == []
    assert series.indeterminate_at == 0


def test_backnonfin_ratio_closed_form_small_n():
    f = pmap("x0^2*x1", "x1^3", "x2^3")
    series = height_ratio_series(f, COORD_AXES, make_point((3, 2, 1)), 8)
    for n, h, hv, ratio in series.rows[1:]:
        num = (3 ** n - 2 ** n) * math.log(2)
        den = 2 ** n * math.log(3) + (3 ** n - 2 ** n) * math.log(2)
        assert ratio == pytest.approx(num / den, rel=1e-12)
