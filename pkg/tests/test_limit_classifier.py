"""The limit decision procedure: all case routes, errors and the audit."""

import pytest

from higgsstrata import (
    Aligned,
    AlignmentImpossible,
    CaseFamilyMismatch,
    ClassificationError,
    ClassifierInput,
    Genus,
    HodgeSummand,
    InfeasibleBySpecialization,
    Min,
    NotApplicable,
    PolystableSum,
    Rank2,
    Rank2BoundViolated,
    SlopeI,
    SlopeN,
    SlopeOutOfBounds,
    Type12,
    Type111,
    Type21,
    classify,
    classify_rank2,
    classify_rank3,
    classify_semistable,
    excluded_gap_integers,
    feasible_inputs,
    parse_hn_type,
    stability_audit,
    validate,
)
from higgsstrata.core import CaseTag


def stratum(hn_text: str, g: int):
    return validate(parse_hn_type(hn_text), Genus(g))


def rank3(hn_text: str, g: int, invariant):
    st = stratum(hn_text, g)
    return classify_rank3(ClassifierInput(st, invariant))


def poly(*summands):
    return PolystableSum(
        tuple(HodgeSummand(degs, tuple(range(len(degs)))) for degs in summands)
    )


class TestSemistable:
    @pytest.mark.parametrize(
        "hn,g,degree", [("3:0", 2, 0), ("2:1", 2, 1), ("3:2", 3, 2)]
    )
    def test_flows_to_zero_higgs_field(self, hn, g, degree):
        out = classify_semistable(stratum(hn, g))
        assert out.case_tag is CaseTag.SEMISTABLE
        assert out.component == Min(out.hnt_limit.total_rank, degree)
        assert out.graded_degrees == (degree,)
        assert out.hnt_limit == parse_hn_type(hn)
        assert not out.strictly_polystable

    def test_rejects_unstable(self):
        with pytest.raises(ClassificationError):
            classify_semistable(stratum("1:1,1:0", 2))


class TestRank2:
    def test_keeps_the_graded_bundle(self):
        out = classify_rank2(stratum("1:1,1:0", 2))
        assert out.case_tag is CaseTag.RANK2
        assert out.component == Rank2(1)
        assert out.graded_degrees == (1, 0)
        assert out.hnt_limit == parse_hn_type("1:1,1:0")

    def test_higher_genus(self):
        out = classify_rank2(stratum("1:2,1:0", 3))
        assert out.component == Rank2(2)
        assert out.graded_degrees == (2, 0)

    def test_bound_violation_caught_at_validation(self):
        with pytest.raises(Rank2BoundViolated):
            stratum("1:3,1:0", 2)

    def test_rejects_semistable(self):
        with pytest.raises(ClassificationError):
            classify_rank2(stratum("2:0", 2))


class TestRank3Cases:
    def test_case_1_1(self):
        out = rank3("1:1,2:0", 3, SlopeI(-1))
        assert out.case_tag is CaseTag.C1_1
        assert out.component == Type12(1, 0)
        assert out.graded_degrees == (1, 0)
        assert out.hnt_limit == parse_hn_type("1:1,2:0")

    def test_case_1_2(self):
        out = rank3("1:1,2:-1", 2, SlopeI(-1))
        assert out.case_tag is CaseTag.C1_2
        assert out.component == poly((1, -1), (0,))
        assert out.hnt_limit == parse_hn_type("1:1,1:0,1:-1")
        assert out.strictly_polystable

    def test_case_1_3(self):
        out = rank3("1:1,2:0", 3, SlopeI(0))
        assert out.case_tag is CaseTag.C1_3
        assert out.component == Type111(1, 0, 0)
        assert out.graded_degrees == (1, 0, 0)
        assert out.hnt_limit == parse_hn_type("1:1,2:0")

    def test_case_1_4(self):
        out = rank3("1:2,1:0,1:-1", 2, SlopeI(0))
        assert out.case_tag is CaseTag.C1_4
        assert out.component == Type111(2, 0, -1)
        assert out.hnt_limit == parse_hn_type("1:2,1:0,1:-1")

    def test_case_2_1(self):
        out = rank3("2:1,1:0", 2, SlopeN(-1))
        assert out.case_tag is CaseTag.C2_1
        assert out.component == Type21(1, 0)
        assert out.graded_degrees == (1, 0)
        assert out.hnt_limit == parse_hn_type("2:1,1:0")

    def test_case_2_2(self):
        out = rank3("2:1,1:-1", 2, SlopeN(0))
        assert out.case_tag is CaseTag.C2_2
        assert out.component == poly((1, -1), (0,))
        assert out.hnt_limit == parse_hn_type("1:1,1:0,1:-1")
        assert out.strictly_polystable

    def test_case_2_3_including_tie_with_mu1(self):
        out = rank3("2:2,1:-1", 2, SlopeN(1))
        assert out.case_tag is CaseTag.C2_3
        assert out.component == Type111(1, 1, -1)
        assert out.graded_degrees == (1, 1, -1)
        assert out.hnt_limit == parse_hn_type("2:2,1:-1")  # merged back

    def test_case_2_4(self):
        out = rank3("1:1,1:0,1:-2", 2, SlopeN(1))
        assert out.case_tag is CaseTag.C2_4
        assert out.component == Type111(1, 0, -2)
        assert out.hnt_limit == parse_hn_type("1:1,1:0,1:-2")

    def test_case_3_1(self):
        out = rank3("1:2,1:0,1:-2", 2, Aligned(True))
        assert out.case_tag is CaseTag.C3_1
        assert out.component == Type111(2, 0, -2)
        assert out.hnt_limit == parse_hn_type("1:2,1:0,1:-2")

    def test_case_3_2(self):
        out = rank3("1:1,1:0,1:-1", 2, Aligned(False))
        assert out.case_tag is CaseTag.C3_2
        assert out.component == poly((1, -1), (0,))
        assert out.graded_degrees == (1, -1, 0)
        assert out.hnt_limit == parse_hn_type("1:1,1:0,1:-1")
        assert out.strictly_polystable

    def test_alignment_impossible_when_spread_exceeds_bound(self):
        with pytest.raises(AlignmentImpossible):
            rank3("1:2,1:0,1:-2", 2, Aligned(False))


class TestRank3Errors:
    def test_slope_above_upper_bound(self):
        with pytest.raises(SlopeOutOfBounds):
            rank3("1:1,2:0", 3, SlopeI(1))

    def test_slope_below_lower_bound(self):
        with pytest.raises(SlopeOutOfBounds):
            rank3("1:1,2:0", 3, SlopeI(-4))

    def test_gap_value_infeasible_case1(self):
        # feasible interval is [mu1-(2g-2), mu3] = [1, 0]; the open gap
        # (mu3, mu2) = (0, 2) contains the integer 1
        with pytest.raises(InfeasibleBySpecialization):
            rank3("1:5,1:2,1:0", 3, SlopeI(1))

    def test_gap_value_infeasible_case2(self):
        with pytest.raises(InfeasibleBySpecialization):
            rank3("1:0,1:-2,1:-5", 3, SlopeN(-1))

    def test_case_family_mismatch(self):
        with pytest.raises(CaseFamilyMismatch):
            rank3("1:1,2:0", 3, SlopeN(0))
        with pytest.raises(CaseFamilyMismatch):
            rank3("2:1,1:-1", 2, SlopeI(0))
        with pytest.raises(CaseFamilyMismatch):
            rank3("1:1,1:0,1:-1", 2, SlopeI(0))

    def test_classify_dispatcher_guards_invariants(self):
        with pytest.raises(CaseFamilyMismatch):
            classify(ClassifierInput(stratum("3:0", 2), SlopeI(0)))
        out = classify(ClassifierInput(stratum("3:0", 2), NotApplicable()))
        assert out.case_tag is CaseTag.SEMISTABLE
        out = classify(ClassifierInput(stratum("1:1,1:0", 2), NotApplicable()))
        assert out.case_tag is CaseTag.RANK2


class TestFeasibleInputs:
    def test_case1_sweep(self):
        assert feasible_inputs(stratum("1:1,2:0", 3)) == [
            SlopeI(-3),
            SlopeI(-2),
            SlopeI(-1),
            SlopeI(0),
        ]

    def test_case3_flags_depend_on_spread(self):
        assert feasible_inputs(stratum("1:1,1:0,1:-1", 2)) == [
            Aligned(True),
            Aligned(False),
        ]
        assert feasible_inputs(stratum("1:2,1:0,1:-2", 2)) == [Aligned(True)]

    def test_gap_integers(self):
        assert excluded_gap_integers(stratum("1:5,1:2,1:0", 3)) == [1]
        assert excluded_gap_integers(stratum("1:0,1:-2,1:-5", 3)) == [-1]
        assert excluded_gap_integers(stratum("1:1,2:0", 3)) == []


class TestInvariantData:
    def test_slope_invariants_accept_only_integers(self):
        from fractions import Fraction

        assert SlopeI(Fraction(2)).value == 2
        with pytest.raises(ValueError):
            SlopeI(Fraction(1, 2))
        with pytest.raises(ValueError):
            SlopeN(True)


def test_graded_bundle_preserving_cases_keep_the_input_type():
    # Cases 1.1, 1.4, 2.1, 2.4, 3.1 and 3.2 leave the associated graded
    # bundle, hence the HN type, unchanged.
    preserving = {
        CaseTag.C1_1,
        CaseTag.C1_4,
        CaseTag.C2_1,
        CaseTag.C2_4,
        CaseTag.C3_1,
        CaseTag.C3_2,
    }
    from higgsstrata import Genus, enumerate_strata

    seen = set()
    for g in (2, 3):
        for d in range(-4, 5):
            for st in enumerate_strata(3, d, Genus(g)):
                if st.is_semistable:
                    continue
                for datum in feasible_inputs(st):
                    out = classify_rank3(ClassifierInput(st, datum))
                    seen.add(out.case_tag)
                    if out.case_tag in preserving:
                        assert out.hnt_limit == st.hn
    assert preserving <= seen


def test_wide_spread_strata_keep_their_graded_bundle():
    # mu1 - mu3 > 2g-2 leaves a single feasible datum whose outcome is
    # 1.4, 2.4 or 3.1, always with the input HN type.
    from higgsstrata import Genus, enumerate_strata

    pinned = {CaseTag.C1_4, CaseTag.C2_4, CaseTag.C3_1}
    seen = 0
    for g in (2, 3):
        for d in range(-4, 5):
            for st in enumerate_strata(3, d, Genus(g)):
                if st.is_semistable:
                    continue
                mu1, _, mu3 = st.mu_vector
                if mu1 - mu3 <= 2 * g - 2:
                    continue
                inputs = feasible_inputs(st)
                assert len(inputs) == 1
                out = classify_rank3(ClassifierInput(st, inputs[0]))
                assert out.case_tag in pinned
                assert out.hnt_limit == st.hn
                seen += 1
    assert seen > 0


class TestStabilityAudit:
    def test_case_1_1_all_strict(self):
        inp = ClassifierInput(stratum("1:1,2:0", 3), SlopeI(-1))
        checks = stability_audit(classify_rank3(inp), inp)
        assert len(checks) == 3
        assert all(c.holds and not c.is_equality for c in checks)

    def test_case_1_2_exactly_one_equality_at_the_split_summand(self):
        inp = ClassifierInput(stratum("1:1,2:-1", 2), SlopeI(-1))
        checks = stability_audit(classify_rank3(inp), inp)
        assert all(c.holds for c in checks)
        equalities = [c for c in checks if c.is_equality]
        assert len(equalities) == 1
        assert equalities[0].subobject == "Q"

    def test_case_2_1_all_strict(self):
        inp = ClassifierInput(stratum("2:1,1:0", 2), SlopeN(-1))
        checks = stability_audit(classify_rank3(inp), inp)
        assert len(checks) == 3
        assert all(c.holds and not c.is_equality for c in checks)

    def test_rank2_single_check(self):
        inp = ClassifierInput(stratum("1:1,1:0", 2), NotApplicable())
        checks = stability_audit(classify_rank2(inp.stratum), inp)
        assert len(checks) == 1
        assert checks[0].holds and not checks[0].is_equality

    def test_semistable_has_nothing_to_audit(self):
        inp = ClassifierInput(stratum("3:0", 2), NotApplicable())
        assert stability_audit(classify_semistable(inp.stratum), inp) == []
