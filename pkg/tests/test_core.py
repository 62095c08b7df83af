"""Exact arithmetic, HN types, polygons, dominance and label encodings."""

from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from higgsstrata import (
    Genus,
    HNPolygon,
    HNType,
    HodgeSummand,
    LimitOutcome,
    Min,
    PolystableSum,
    Rank2,
    Type12,
    Type21,
    Type111,
    dominates,
    format_hn_type,
    format_label,
    format_rational,
    parse_hn_type,
    parse_label,
    parse_rational,
    polygon_of,
    slope,
)
from higgsstrata.core import CaseTag

fractions = st.fractions(min_value=-100, max_value=100)


@pytest.mark.parametrize(
    "rank,degree,expected",
    [(3, 0, Fraction(0)), (2, 1, Fraction(1, 2)), (3, 4, Fraction(4, 3))],
)
def test_slope(rank, degree, expected):
    assert slope(rank, degree) == expected


def test_slope_rejects_zero_rank():
    with pytest.raises(ValueError):
        slope(0, 3)


@given(fractions, fractions)
def test_rational_arithmetic_closed_and_reduced(a, b):
    for value in (a + b, a - b, a * b):
        assert value.denominator > 0
        assert gcd(abs(value.numerator), value.denominator) == 1


@given(fractions, fractions, fractions)
def test_rational_order_transitive(a, b, c):
    x, y, z = sorted((a, b, c))
    assert x <= y <= z and x <= z


@pytest.mark.parametrize("value,text", [(Fraction(1, 2), "1/2"), (Fraction(-3), "-3"), (Fraction(4, 3), "4/3")])
def test_rational_text_encoding(value, text):
    assert format_rational(value) == text
    assert parse_rational(text) == value


def test_genus():
    assert Genus(2).canonical_degree == 2
    assert Genus(5).canonical_degree == 8
    with pytest.raises(ValueError):
        Genus(1)


class TestHNType:
    def test_merges_equal_consecutive_slopes(self):
        assert HNType(((1, 1), (1, 0), (1, 0))).steps == ((1, 1), (2, 0))
        assert HNType(((1, 2), (1, 2))).steps == ((2, 4),)

    def test_rejects_increasing_slopes(self):
        with pytest.raises(ValueError):
            HNType(((1, 0), (1, 1)))

    def test_rejects_bad_ranks(self):
        with pytest.raises(ValueError):
            HNType(((0, 1),))
        with pytest.raises(ValueError):
            HNType(())

    def test_mu_vector_repeats_with_multiplicity(self):
        assert HNType(((1, 1), (2, -1))).mu_vector == (
            Fraction(1),
            Fraction(-1, 2),
            Fraction(-1, 2),
        )
        assert HNType(((3, 2),)).mu_vector == (Fraction(2, 3),) * 3

    def test_semistable_flag_and_totals(self):
        hn = HNType(((2, 1), (1, -1)))
        assert not hn.is_semistable
        assert (hn.total_rank, hn.total_degree) == (3, 0)
        assert hn.slope == 0
        assert HNType(((3, 0),)).is_semistable

    def test_text_encoding_round_trip(self):
        for text in ("1:1,2:-1", "3:0", "1:1,1:0,1:-1", "2:5,1:-2"):
            assert format_hn_type(parse_hn_type(text)) == text
        with pytest.raises(ValueError):
            parse_hn_type("1,2")


@pytest.mark.parametrize(
    "steps,vertices",
    [
        (((1, 1), (1, 0), (1, -1)), ((0, 0), (1, 1), (2, 1), (3, 0))),
        (((2, 1), (1, -1)), ((0, 0), (2, 1), (3, 0))),
        (((3, 0),), ((0, 0), (3, 0))),
    ],
)
def test_polygon_of_partial_sums(steps, vertices):
    assert polygon_of(HNType(steps)).vertices == vertices


def test_polygon_rejects_non_convex():
    with pytest.raises(ValueError):
        HNPolygon(((0, 0), (1, 0), (2, 1)))
    with pytest.raises(ValueError):
        HNPolygon(((0, 0), (1, 1), (2, 2)))  # collinear is not strictly convex


def test_polygon_heights_are_exact():
    poly = polygon_of(HNType(((1, 1), (2, -1))))
    assert poly.height_at(2) == Fraction(1, 2)
    with pytest.raises(ValueError):
        poly.height_at(4)


class TestDominates:
    def test_spec_examples(self):
        p = polygon_of(HNType(((1, 2), (1, 0), (1, -2))))
        q = polygon_of(HNType(((1, 1), (1, 0), (1, -1))))
        assert dominates(p, q)       # heights (2,2) >= (1,1)
        assert dominates(p, p)       # reflexive
        assert not dominates(q, p)   # height 1 < 2 at rank 1

    def test_rejects_mismatched_endpoints(self):
        p = polygon_of(HNType(((3, 0),)))
        q = polygon_of(HNType(((3, 1),)))
        with pytest.raises(ValueError):
            dominates(p, q)

    def test_partial_order_on_admissible_types(self):
        from higgsstrata import enumerate_strata

        for rank, degree, g in ((3, 0, 2), (3, 1, 3), (2, 1, 2)):
            polys = [polygon_of(s.hn) for s in enumerate_strata(rank, degree, Genus(g))]
            for p in polys:
                assert dominates(p, p)
                for q in polys:
                    if dominates(p, q) and dominates(q, p):
                        assert p == q
                    for r in polys:
                        if dominates(p, q) and dominates(q, r):
                            assert dominates(p, r)


class TestLabels:
    @pytest.mark.parametrize(
        "label,text",
        [
            (Rank2(1), "r2:1"),
            (Type12(1, 0), "t12:1|0"),
            (Type21(2, -1), "t21:2|-1"),
            (Type111(1, 0, -1), "t111:1,0,-1"),
            (
                PolystableSum((HodgeSummand((1, -1), (0, 1)), HodgeSummand((0,), (0,)))),
                "poly:[1,-1]+[0]",
            ),
        ],
    )
    def test_encoding_round_trip(self, label, text):
        assert format_label(label) == text
        assert parse_label(text) == label

    def test_min_needs_context(self):
        assert format_label(Min(3, 0)) == "min"
        assert parse_label("min", rank=3, degree=0) == Min(3, 0)
        with pytest.raises(ValueError):
            parse_label("min")

    def test_polystable_sum_is_unordered(self):
        a = PolystableSum((HodgeSummand((0,), (0,)), HodgeSummand((1, -1), (0, 1))))
        b = PolystableSum((HodgeSummand((1, -1), (0, 1)), HodgeSummand((0,), (0,))))
        assert a == b
        assert a.summands[0].degrees == (1, -1)


class TestLimitOutcome:
    def test_polystable_flag_must_match_case(self):
        with pytest.raises(ValueError):
            LimitOutcome(
                case_tag=CaseTag.C1_1,
                component=Type12(1, 0),
                graded_degrees=(1, 0),
                hnt_limit=HNType(((1, 1), (2, 0))),
                strictly_polystable=True,
            )

    def test_graded_degrees_must_conserve_degree(self):
        with pytest.raises(ValueError):
            LimitOutcome(
                case_tag=CaseTag.RANK2,
                component=Rank2(1),
                graded_degrees=(1, 1),
                hnt_limit=HNType(((1, 1), (1, 0))),
                strictly_polystable=False,
            )
