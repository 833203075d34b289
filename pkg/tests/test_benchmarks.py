import datetime
from decimal import Decimal

import pytest

from walkgen.benchmarks import BENCHMARKS, get_benchmark, load_benchmark
from walkgen.goals import extract_goals
from walkgen.interpreter import execute


@pytest.mark.parametrize("name", sorted(BENCHMARKS))
def test_benchmark_parses_with_recorded_counts(name):
    entry = BENCHMARKS[name]
    model = entry.model()
    assert model.name == name
    assert len(model.decisions) == entry.decisions
    assert len(extract_goals(model)) == entry.goals


def test_variable_kinds():
    def kinds(name):
        return [v.kind for v in load_benchmark(name).variables]

    assert kinds("tri-int") == ["int32"] * 3
    assert kinds("tri-real") == ["real"] * 3
    assert kinds("line-rect") == ["real"] * 8
    assert kinds("day-date") == ["int32"] * 6


def test_real_variants_use_both_precisions():
    a = load_benchmark("tri-real").variables[0]
    b = load_benchmark("tri-real-2m").variables[0]
    assert (a.min, a.max, a.decimals) == (Decimal(-100000), Decimal(100000), 3)
    assert (b.min, b.max, b.decimals) == (Decimal(-2000000), Decimal(2000000), 4)


def test_triangle_has_24_goals_like_the_original():
    for name in ("tri-int", "tri-real", "tri-real-2m"):
        assert BENCHMARKS[name].goals == BENCHMARKS[name].historical_goals == 24


@pytest.mark.parametrize(
    "values, label",
    [((3, 3, 3), "equilateral"), ((3, 3, 5), "isosceles_ab"), ((5, 3, 3), "isosceles_bc"),
     ((3, 5, 3), "isosceles_ac"), ((3, 4, 5), "scalene"), ((1, 2, 3), "not_a_triangle"), ((0, 2, 3), "invalid_side")],
)
def test_triangle_classification(tri_int, values, label):
    assert label in execute(tri_int, values).targets


@pytest.mark.parametrize(
    "dates",
    [(1, 1, 2000, 1, 1, 2000), (1, 1, 2000, 1, 3, 2000), (1, 3, 1999, 1, 3, 2000), (29, 2, 2000, 28, 2, 2100),
     (15, 6, 1901, 2, 11, 2024), (2, 11, 2024, 15, 6, 1901), (1, 1, 1, 31, 12, 9999), (31, 12, 1600, 1, 1, 1601)],
)
def test_day_count_matches_datetime(dates):
    model = load_benchmark("day-date")
    trace = execute(model, dates)
    assert trace.targets == ["days_between"]
    d1, m1, y1, d2, m2, y2 = dates
    expected = abs((datetime.date(y2, m2, d2) - datetime.date(y1, m1, d1)).days)
    assert trace.env["RESULT"] == expected


@pytest.mark.parametrize(
    "dates, label",
    [((1, 1, 0, 1, 1, 1), "bad_year1"), ((1, 13, 5, 1, 1, 1), "bad_month1"), ((29, 2, 1900, 1, 1, 1), "bad_day1"),
     ((1, 1, 1, 1, 1, 10000), "bad_year2"), ((1, 1, 1, 1, 0, 1), "bad_month2"), ((31, 4, 1, 31, 4, 2), "bad_day1"),
     ((1, 1, 1, 31, 6, 2), "bad_day2")],
)
def test_day_date_rejects_invalid_dates(dates, label):
    assert execute(load_benchmark("day-date"), dates).targets == [label]


@pytest.mark.parametrize(
    "segment, label",
    [(("1", "1", "2", "2"), "inside"), (("-5", "5", "-5", "5"), "point_outside"),
     (("-5", "1", "-4", "2"), "outside_same_side"), (("-5", "8", "8", "21"), "outside_line_misses"),
     (("-1", "-1", "11", "11"), "through_corner"), (("1", "1", "20", "2"), "start_inside"),
     (("20", "2", "1", "1"), "end_inside"), (("5", "-3", "5", "20"), "vertical_crossing"),
     (("-3", "5", "20", "5"), "horizontal_crossing"), (("-3", "4", "20", "6"), "crossing")],
)
def test_line_rect_classification(segment, label):
    model = load_benchmark("line-rect")
    assert label in execute(model, (*segment, "0", "0", "10", "10")).targets
    assert "bad_rectangle" in execute(model, (*segment, "10", "0", "0", "10")).targets


def test_unknown_benchmark():
    with pytest.raises(KeyError, match="unknown benchmark"):
        get_benchmark("quadratic")
