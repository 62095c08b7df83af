"""Acceptance suite: exact, property-style checks over desk-scale sweeps.

Every criterion is exact (zero tolerance); the default sweep covers
genus 2..5 and |degree| <= 6 and runs in seconds.  Each function returns
a CriterionResult instead of raising, so the CLI can report a full
pass/fail summary.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import fixed_points, incidence, limit_classifier, matrix_oracle
from .admissibility import CaseFamily, case_family, enumerate_strata
from .core import CaseTag, Genus, Type111, dominates, polygon_of

GENERA = (2, 3, 4, 5)
DEGREES = tuple(range(-6, 7))


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    details: str


def _result(number: int, name: str, failures: list[str], detail: str) -> CriterionResult:
    if failures:
        shown = "; ".join(failures[:5])
        if len(failures) > 5:
            shown += f"; ... ({len(failures)} failures)"
        return CriterionResult(number, name, False, shown)
    return CriterionResult(number, name, True, detail)


def _grid(genera, degrees):
    return [(Genus(g), d) for g in genera for d in degrees]


def criterion_rank2_coincidence(genera=GENERA, degrees=DEGREES) -> CriterionResult:
    """The two stratifications coincide in rank 2, with the component
    count recomputed from the bound d < 2*d1 <= d + 2g-2."""
    failures = []
    checked = 0
    for genus, d in _grid(genera, degrees):
        table = incidence.build_table(2, d, genus)
        if not incidence.check_rank2_coincidence(table):
            failures.append(f"coincidence fails at rank 2, d={d}, g={genus.g}")
        by_bound = sum(1 for d1 in range(d - 10, d + 10) if d < 2 * d1 <= d + genus.canonical_degree)
        count = len(fixed_points.enumerate_fixed_components(2, d, genus))
        if count != 1 + by_bound or count != genus.g:
            failures.append(
                f"component count {count} != 1+{by_bound} (g={genus.g}, d={d})"
            )
        checked += 1
    return _result(1, "rank2-coincidence", failures, f"{checked} tables bijective")


def _independent_case_matches(stratum, v: int) -> list[CaseTag]:
    # Direct translation of the case inequalities, kept independent of
    # the classifier's branch ordering.
    mu1, mu2, mu3 = stratum.mu_vector
    mu = stratum.mu
    k = stratum.genus.canonical_degree
    t = Fraction(-mu1 + 2 * mu2 + 2 * mu3, 3)
    family = case_family(stratum)
    matches = []
    if family is CaseFamily.CASE1_I:
        if mu1 - k <= v < t:
            matches.append(CaseTag.C1_1)
        if v == t:
            matches.append(CaseTag.C1_2)
        if t < v <= mu3:
            matches.append(CaseTag.C1_3)
        if v == mu2 and mu2 > mu3:
            matches.append(CaseTag.C1_4)
    elif family is CaseFamily.CASE2_N:
        if mu1 + mu2 - mu3 - k <= v < mu:
            matches.append(CaseTag.C2_1)
        if v == mu:
            matches.append(CaseTag.C2_2)
        if mu < v <= mu2:
            matches.append(CaseTag.C2_3)
        if v == mu1 and mu1 > mu2:
            matches.append(CaseTag.C2_4)
    return matches


def sweep_outcomes(genera=GENERA, degrees=DEGREES):
    """Yield (genus, degree, stratum, datum, outcome) over every
    feasible rank-3 classification in the grid."""
    for genus, d in _grid(genera, degrees):
        for stratum in enumerate_strata(3, d, genus):
            if stratum.is_semistable:
                continue
            for datum in limit_classifier.feasible_inputs(stratum):
                outcome = limit_classifier.classify_rank3(
                    limit_classifier.ClassifierInput(stratum, datum)
                )
                yield genus, d, stratum, datum, outcome


def criterion_exhaustive_classification(genera=GENERA, degrees=DEGREES) -> CriterionResult:
    """Every feasible invariant fires exactly one case (checked against
    an independent inequality evaluation); every integer in the excluded
    gaps raises InfeasibleBySpecialization."""
    failures = []
    classified = gap_checked = 0
    for genus, d in _grid(genera, degrees):
        for stratum in enumerate_strata(3, d, genus):
            if stratum.is_semistable:
                continue
            for datum in limit_classifier.feasible_inputs(stratum):
                outcome = limit_classifier.classify_rank3(
                    limit_classifier.ClassifierInput(stratum, datum)
                )
                classified += 1
                if isinstance(datum, limit_classifier.Aligned):
                    expected = CaseTag.C3_1 if datum.flag else CaseTag.C3_2
                    if outcome.case_tag is not expected:
                        failures.append(f"{stratum.hn} flag={datum.flag}: {outcome.case_tag}")
                    continue
                matches = _independent_case_matches(stratum, datum.value)
                if len(matches) != 1 or matches[0] is not outcome.case_tag:
                    failures.append(
                        f"{stratum.hn} v={datum.value}: classifier says "
                        f"{outcome.case_tag.value}, inequalities match {matches}"
                    )
            for v in limit_classifier.excluded_gap_integers(stratum):
                gap_checked += 1
                if _independent_case_matches(stratum, v):
                    failures.append(f"{stratum.hn} gap value {v} matches a case")
                inv = (
                    limit_classifier.SlopeI(v)
                    if case_family(stratum) is CaseFamily.CASE1_I
                    else limit_classifier.SlopeN(v)
                )
                try:
                    limit_classifier.classify_rank3(
                        limit_classifier.ClassifierInput(stratum, inv)
                    )
                    failures.append(f"{stratum.hn} gap value {v} did not raise")
                except limit_classifier.InfeasibleBySpecialization:
                    pass
                except limit_classifier.ClassificationError as exc:
                    failures.append(f"{stratum.hn} gap value {v}: wrong error {exc!r}")
    return _result(
        2,
        "exhaustive-classification",
        failures,
        f"{classified} classifications unique, {gap_checked} gap values excluded",
    )


def criterion_specialization_monotonicity(genera=GENERA, degrees=DEGREES) -> CriterionResult:
    """The HN polygon of the limit dominates the input polygon."""
    failures = []
    count = 0
    for genus, d, stratum, datum, outcome in sweep_outcomes(genera, degrees):
        count += 1
        if not dominates(polygon_of(outcome.hnt_limit), polygon_of(stratum.hn)):
            failures.append(f"{stratum.hn} -> {outcome.hnt_limit} fails to rise")
    return _result(3, "specialization-monotonicity", failures, f"{count} outcomes dominate")


def criterion_coprime_degrees(genera=GENERA, degrees=DEGREES) -> CriterionResult:
    """gcd(3, d) = 1 forbids strictly polystable limits and balanced strata."""
    failures = []
    count = 0
    coprime = [d for d in degrees if gcd(3, d) == 1]
    for genus, d in _grid(genera, coprime):
        for stratum in enumerate_strata(3, d, genus):
            if stratum.is_semistable:
                continue
            if case_family(stratum) is CaseFamily.CASE3_FLAG:
                failures.append(f"balanced stratum {stratum.hn} at coprime d={d}")
            for datum in limit_classifier.feasible_inputs(stratum):
                outcome = limit_classifier.classify_rank3(
                    limit_classifier.ClassifierInput(stratum, datum)
                )
                count += 1
                if outcome.strictly_polystable:
                    failures.append(f"polystable limit for {stratum.hn} at d={d}")
    return _result(4, "coprime-degrees", failures, f"{count} coprime outcomes all stable")


def criterion_hn_bb_theorem(genera=GENERA, degrees=DEGREES) -> CriterionResult:
    """Sufficiently spread type-(1,1,1) labels have singleton preimage;
    the (g=2, d=0) instance verifies (2,0,-2) and excludes (1,0,-1)."""
    failures = []
    verified_total = 0
    for genus, d in _grid(genera, degrees):
        table = incidence.build_table(3, d, genus)
        try:
            verified = incidence.check_hn_bb_theorem(table)
        except AssertionError as exc:
            failures.append(str(exc))
            continue
        verified_total += len(verified)
        if (genus.g, d) == (2, 0):
            labels = {
                outcome.component
                for row in table.rows
                for _, outcome in row.entries
                if isinstance(outcome.component, Type111)
            }
            if Type111(2, 0, -2) not in verified:
                failures.append("(2,0,-2) not verified at g=2, d=0")
            if Type111(1, 0, -1) in verified:
                failures.append("(1,0,-1) wrongly in scope at g=2, d=0")
            if Type111(1, 0, -1) not in labels:
                failures.append("(1,0,-1) missing from the g=2, d=0 table")
    return _result(5, "hn-bb-coincidence", failures, f"{verified_total} labels verified")


def criterion_fixed_point_enumeration(genera=GENERA, degrees=DEGREES) -> CriterionResult:
    """(g=2, d=0) has exactly the two expected type-(1,1,1) components,
    and the two invariant dictionaries round-trip on everything
    enumerated."""
    failures = []
    round_trips = 0
    expected = [Type111(1, 0, -1), Type111(2, 0, -2)]
    got = fixed_points.enumerate_fixed_111(0, Genus(2))
    if got != expected:
        failures.append(f"g=2, d=0 components {got} != {expected}")
    for genus, d in _grid(genera, degrees):
        for m in fixed_points.enumerate_m_invariants(d, genus):
            if fixed_points.l_to_m(fixed_points.m_to_l(m)) != m:
                failures.append(f"m-round-trip fails for {m}")
            round_trips += 1
        for label in fixed_points.enumerate_fixed_111(d, genus):
            l = fixed_points.LInvariants(label.l1, label.l2, label.l3, genus)
            if fixed_points.m_to_l(fixed_points.l_to_m(l)) != l:
                failures.append(f"l-round-trip fails for {label}")
            round_trips += 1
    return _result(6, "fixed-point-enumeration", failures, f"{round_trips} round-trips exact")


def criterion_oracle_equivalence(genera=GENERA, degrees=DEGREES) -> CriterionResult:
    """The gauge-scaling engine confirms 100% of sweep outcomes and
    reproduces the two anchored block-scaling computations exactly."""
    failures = []
    count = 0
    for genus, d, stratum, datum, outcome in sweep_outcomes(genera, degrees):
        count += 1
        if not matrix_oracle.oracle_check(outcome):
            failures.append(f"oracle rejects {outcome.case_tag.value} of {stratum.hn}")
    # Two-piece computation: weights (0,1), everything nonzero.
    pat_a = matrix_oracle.parse_block_pattern("w:0,1\n**\n**\n.*\n..")
    lim_a = matrix_oracle.take_limit(pat_a)
    if lim_a.exponents != ((1, 2), (0, 1)):
        failures.append(f"two-piece exponents {lim_a.exponents}")
    if not lim_a.converges or matrix_oracle.nonzero_set(lim_a.limit_higgs) != {(2, 1)}:
        failures.append("two-piece limit is not the single subdiagonal block")
    if matrix_oracle.nonzero_set(lim_a.limit_dbar):
        failures.append("two-piece limit dbar did not diagonalize")
    # Three-piece computation: weights (0,1,2), bottom-left block zero.
    pat_b = matrix_oracle.parse_block_pattern("w:0,1,2\n***\n***\n.**\n.**\n..*\n...")
    lim_b = matrix_oracle.take_limit(pat_b)
    if lim_b.exponents != ((1, 2, 3), (0, 1, 2), (-1, 0, 1)):
        failures.append(f"three-piece exponents {lim_b.exponents}")
    if not lim_b.converges or matrix_oracle.nonzero_set(lim_b.limit_higgs) != {(2, 1), (3, 2)}:
        failures.append("three-piece limit is not the subdiagonal chain")
    if matrix_oracle.nonzero_set(lim_b.limit_dbar):
        failures.append("three-piece limit dbar did not diagonalize")
    return _result(7, "oracle-equivalence", failures, f"{count} outcomes confirmed")


def criterion_stability_audit(genera=GENERA, degrees=DEGREES) -> CriterionResult:
    """Every audited inequality holds, strictly except for exactly one
    equality in each strictly polystable case."""
    failures = []
    count = 0
    for genus, d, stratum, datum, outcome in sweep_outcomes(genera, degrees):
        checks = limit_classifier.stability_audit(
            outcome, limit_classifier.ClassifierInput(stratum, datum)
        )
        count += 1
        if not all(c.holds for c in checks):
            failures.append(f"audit fails for {outcome.case_tag.value} of {stratum.hn}")
        equalities = sum(1 for c in checks if c.is_equality)
        if equalities != (1 if outcome.strictly_polystable else 0):
            failures.append(
                f"{stratum.hn} case {outcome.case_tag.value}: {equalities} equalities"
            )
    return _result(8, "stability-audit", failures, f"{count} audits with exact strictness")


def criterion_determinism() -> CriterionResult:
    """Identical incidence queries serialize to byte-identical JSON."""
    from . import cli  # local import: cli drives this module's run_all

    failures = []
    for rank, degree, genus in ((3, 0, 2), (3, 1, 3), (2, 1, 2)):
        config = cli.RunConfig(
            command="incidence", genus=genus, rank=rank, degree=degree, format="json"
        )
        code1, out1 = cli.run(config)
        code2, out2 = cli.run(config)
        if code1 != 0 or code2 != 0:
            failures.append(f"incidence run failed for rank {rank}, d={degree}")
        elif out1.encode() != out2.encode():
            failures.append(f"output differs for rank {rank}, d={degree}")
    return _result(9, "determinism", failures, "3 queries byte-identical")


ALL_CRITERIA = (
    criterion_rank2_coincidence,
    criterion_exhaustive_classification,
    criterion_specialization_monotonicity,
    criterion_coprime_degrees,
    criterion_hn_bb_theorem,
    criterion_fixed_point_enumeration,
    criterion_oracle_equivalence,
    criterion_stability_audit,
    criterion_determinism,
)


def run_all(genera=GENERA, degrees=DEGREES) -> list[CriterionResult]:
    results = []
    for criterion in ALL_CRITERIA:
        if criterion is criterion_determinism:
            results.append(criterion())
        else:
            results.append(criterion(genera, degrees))
    return results
