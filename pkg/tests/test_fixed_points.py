"""Fixed-component labels: the (m1, m2) region, the degree dictionary
and the component enumerations."""

import pytest

from higgsstrata import (
    Genus,
    LInvariants,
    MInvariants,
    Min,
    NoIntegerSolution,
    Rank2,
    Type12,
    Type21,
    Type111,
    enumerate_fixed_111,
    enumerate_fixed_components,
    enumerate_m_invariants,
    l_to_m,
    m_to_l,
    validate_fixed_111,
)
from higgsstrata.fixed_points import validate_component_label, validate_m_invariants


def naive_fixed_111(degree: int, g: int) -> set[tuple[int, int, int]]:
    """Brute-force oracle: scan a wide cube of line degrees and keep the
    triples satisfying the coupling and stability inequalities."""
    k = 2 * g - 2
    window = range(degree - 4 * k - 10, degree + 4 * k + 11)
    out = set()
    for l1 in window:
        for l2 in window:
            l3 = degree - l1 - l2
            if (
                l2 - l1 + k >= 0
                and l3 - l2 + k >= 0
                and l1 + l2 - 2 * l3 > 0
                and 2 * l1 - l2 - l3 > 0
            ):
                out.add((l1, l2, l3))
    return out


class TestMToL:
    def test_examples(self):
        assert m_to_l(MInvariants(1, 1, Genus(2), 0)).degrees == (1, 0, -1)
        assert m_to_l(MInvariants(0, 0, Genus(2), 0)).degrees == (2, 0, -2)

    def test_degenerate_equal_degrees_pass_the_solve_but_fail_stability(self):
        for g, d in ((2, 0), (3, 6), (4, -3)):
            k = 2 * g - 2
            l = m_to_l(MInvariants(k, k, Genus(g), d))
            assert l.degrees == (d // 3,) * 3
            assert not validate_fixed_111(l, d)

    def test_no_integer_solution(self):
        with pytest.raises(NoIntegerSolution):
            m_to_l(MInvariants(1, 1, Genus(2), 1))

    def test_round_trips(self):
        for g in (2, 3, 4, 5):
            genus = Genus(g)
            for d in range(-6, 7):
                for m in enumerate_m_invariants(d, genus):
                    assert l_to_m(m_to_l(m)) == m
                for label in enumerate_fixed_111(d, genus):
                    l = LInvariants(*label.degrees, genus)
                    assert m_to_l(l_to_m(l)) == l


class TestValidateFixed111:
    @pytest.mark.parametrize(
        "degrees,valid",
        [((1, 0, -1), True), ((2, 0, -2), True), ((0, 0, 0), False)],
    )
    def test_examples_at_genus2_degree0(self, degrees, valid):
        assert validate_fixed_111(LInvariants(*degrees, Genus(2)), 0) is valid

    def test_degree_mismatch_fails(self):
        assert not validate_fixed_111(LInvariants(1, 0, -1, Genus(2)), 1)


class TestEnumeration:
    def test_m_region_at_genus2_degree0(self):
        got = [(m.m1, m.m2) for m in enumerate_m_invariants(0, Genus(2))]
        assert got == [(0, 0), (1, 1)]

    def test_m_region_matches_paper_condition_when_degree_divisible(self):
        # For 3 | d the solvability condition is m1 + 2*m2 = 0 (mod 3).
        for m in enumerate_m_invariants(6, Genus(3)):
            assert (m.m1 + 2 * m.m2) % 3 == 0

    def test_type111_labels_match_naive_oracle(self):
        for g in (2, 3):
            for d in (-4, -1, 0, 1, 3):
                got = {t.degrees for t in enumerate_fixed_111(d, Genus(g))}
                assert got == naive_fixed_111(d, g)

    @pytest.mark.parametrize(
        "degree,expected",
        [(1, [Min(2, 1), Rank2(1)]), (0, [Min(2, 0), Rank2(1)])],
    )
    def test_rank2_components_at_genus2(self, degree, expected):
        assert enumerate_fixed_components(2, degree, Genus(2)) == expected

    def test_rank2_component_count_is_genus(self):
        for g in (2, 3, 4, 5):
            for d in range(-6, 7):
                assert len(enumerate_fixed_components(2, d, Genus(g))) == g

    def test_rank3_degree0_genus2(self):
        got = enumerate_fixed_components(3, 0, Genus(2))
        assert got == [Min(3, 0), Type111(1, 0, -1), Type111(2, 0, -2)]

    def test_rank3_degree1_genus2_includes_reachable_pairs(self):
        got = enumerate_fixed_components(3, 1, Genus(2))
        assert got == [
            Min(3, 1),
            Type12(1, 0),
            Type21(1, 0),
            Type111(1, 0, 0),
            Type111(1, 1, -1),
            Type111(2, 0, -1),
        ]

    def test_unsupported_rank(self):
        with pytest.raises(ValueError):
            enumerate_fixed_components(4, 0, Genus(2))


class TestValidateComponentLabel:
    def test_bookkeeping(self):
        g = Genus(2)
        assert validate_component_label(Min(3, 0), 3, 0, g)
        assert not validate_component_label(Min(3, 1), 3, 0, g)
        assert validate_component_label(Rank2(1), 2, 0, g)
        assert not validate_component_label(Rank2(2), 2, 0, g)
        assert validate_component_label(Type12(1, -1), 3, 0, g)
        assert not validate_component_label(Type12(1, 0), 3, 0, g)
        assert validate_component_label(Type111(1, 0, -1), 3, 0, g)
        assert not validate_component_label(Type111(0, 0, 0), 3, 0, g)


def test_m_validation_outside_region():
    g = Genus(2)
    assert validate_m_invariants(MInvariants(1, 1, g, 0))
    assert not validate_m_invariants(MInvariants(-1, 1, g, 0))
    assert not validate_m_invariants(MInvariants(2, 2, g, 0))  # stability bound
    assert not validate_m_invariants(MInvariants(1, 1, g, 1))  # mod-3 solvability
