"""Assemble the full incidence relation between the two stratifications.

A table records, for every admissible Harder-Narasimhan stratum of a
moduli space, the downward-flow limit of each feasible invariant value,
and indexes the fixed-component labels by the strata reaching them.
One stratum meeting several components is the expected picture in
rank 3; in rank 2 the correspondence is a bijection.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

from . import fixed_points, limit_classifier, matrix_oracle
from .admissibility import AdmissibleStratum, RankUnsupported, enumerate_strata
from .core import (
    FixedComponentLabel,
    Genus,
    HNType,
    LimitOutcome,
    Min,
    Rank2,
    Type111,
    format_hn_type,
    format_label,
)

#: Invariant key of one classified entry: the integer slope of I or N,
#: the alignment flag, or None for semistable and rank-2 strata.
InvariantKey = int | bool | None


@dataclass(frozen=True)
class IncidenceRow:
    stratum: AdmissibleStratum
    entries: tuple[tuple[InvariantKey, LimitOutcome], ...]

    @property
    def feasible_set(self) -> tuple[InvariantKey, ...]:
        return tuple(key for key, _ in self.entries)


@dataclass(frozen=True)
class IncidenceTable:
    rank: int
    degree: int
    genus: Genus
    rows: tuple[IncidenceRow, ...]
    #: Association list (sorted by label text) from each fixed-component
    #: label to the HN types of the strata reaching it.
    bb_index: tuple[tuple[FixedComponentLabel, tuple[HNType, ...]], ...]

    def bb_map(self) -> dict[FixedComponentLabel, tuple[HNType, ...]]:
        return dict(self.bb_index)


def _invariant_key(datum: limit_classifier.InvariantDatum) -> InvariantKey:
    if isinstance(datum, (limit_classifier.SlopeI, limit_classifier.SlopeN)):
        return datum.value
    if isinstance(datum, limit_classifier.Aligned):
        return datum.flag
    return None


def build_table(rank: int, degree: int, genus: Genus) -> IncidenceTable:
    """Classify every (stratum, feasible invariant) pair and index the
    outcomes.

    Construction is deterministic: strata in enumeration order, slope
    invariants ascending, alignment flags True before False.  Every
    outcome is checked against the fixed-point constraints and the
    gauge-scaling engine before it enters the table.
    """
    rows = []
    reaching: dict[FixedComponentLabel, list[HNType]] = {}
    for stratum in enumerate_strata(rank, degree, genus):
        entries = []
        for datum in limit_classifier.feasible_inputs(stratum):
            outcome = limit_classifier.classify(
                limit_classifier.ClassifierInput(stratum, datum)
            )
            if not fixed_points.validate_component_label(
                outcome.component, rank, degree, genus
            ):
                raise AssertionError(
                    f"outcome component {format_label(outcome.component)} fails "
                    f"fixed-point validation for stratum {stratum.hn}"
                )
            if not matrix_oracle.oracle_check(outcome):
                raise AssertionError(
                    f"gauge-scaling check failed for case {outcome.case_tag.value} "
                    f"of stratum {stratum.hn}"
                )
            entries.append((_invariant_key(datum), outcome))
            reaching.setdefault(outcome.component, [])
            if stratum.hn not in reaching[outcome.component]:
                reaching[outcome.component].append(stratum.hn)
        rows.append(IncidenceRow(stratum, tuple(entries)))
    bb_index = tuple(
        (label, tuple(reaching[label]))
        for label in sorted(reaching, key=format_label)
    )
    return IncidenceTable(rank, degree, genus, tuple(rows), bb_index)


def check_rank2_coincidence(table: IncidenceTable) -> bool:
    """True iff the stratum -> component map is the expected bijection:
    the semistable stratum to the minimal component and the stratum with
    subline degree d1 to the component with the same d1."""
    if table.rank != 2:
        raise RankUnsupported("rank-2 coincidence check needs a rank-2 table")
    components = fixed_points.enumerate_fixed_components(
        2, table.degree, table.genus
    )
    seen = []
    for row in table.rows:
        if len(row.entries) != 1:
            return False
        outcome = row.entries[0][1]
        if row.stratum.is_semistable:
            if outcome.component != Min(2, table.degree):
                return False
        else:
            d1 = row.stratum.hn.steps[0][1]
            if outcome.component != Rank2(d1):
                return False
        seen.append(outcome.component)
    return len(seen) == len(set(seen)) and set(seen) == set(components)


def check_hn_bb_theorem(table: IncidenceTable) -> list[Type111]:
    """Verify that sufficiently spread type-(1,1,1) components pin down
    their stratum.

    For each type-(1,1,1) label with l1 - l3 > 2g-2 occurring in the
    table, assert that its preimage is exactly the stratum with the same
    slope vector and that the stratum's whole feasible set maps to it.
    Returns the verified labels; a violation raises AssertionError
    naming the label (it would indicate an implementation bug).
    """
    if table.rank != 3:
        raise RankUnsupported("the coincidence theorem check needs a rank-3 table")
    k = table.genus.canonical_degree
    preimages: dict[Type111, list[tuple[AdmissibleStratum, InvariantKey]]] = {}
    for row in table.rows:
        for key, outcome in row.entries:
            if isinstance(outcome.component, Type111):
                preimages.setdefault(outcome.component, []).append((row.stratum, key))
    verified = []
    for label in sorted(preimages, key=lambda t: t.degrees):
        if label.l1 - label.l3 <= k:
            continue
        expected_hn = HNType(((1, label.l1), (1, label.l2), (1, label.l3)))
        pairs = preimages[label]
        strata = {stratum.hn for stratum, _ in pairs}
        if strata != {expected_hn}:
            raise AssertionError(
                f"label {format_label(label)}: preimage strata "
                f"{sorted(map(format_hn_type, strata))} != {{{expected_hn}}}"
            )
        (row,) = [r for r in table.rows if r.stratum.hn == expected_hn]
        if len(pairs) != len(row.entries):
            raise AssertionError(
                f"label {format_label(label)}: only {len(pairs)} of "
                f"{len(row.entries)} feasible values reach it"
            )
        verified.append(label)
    return verified


# ---------------------------------------------------------------------------
# Serialization


def _json_invariant(key: InvariantKey):
    return key


def table_to_records(table: IncidenceTable) -> list[dict]:
    """Flat outcome records, one per (stratum, invariant) pair."""
    records = []
    for row in table.rows:
        feasible = [_json_invariant(k) for k in row.feasible_set if k is not None]
        for key, outcome in row.entries:
            records.append(
                {
                    "stratum": format_hn_type(row.stratum.hn),
                    "invariant": _json_invariant(key),
                    "case": outcome.case_tag.value,
                    "component": format_label(outcome.component),
                    "graded_degrees": list(outcome.graded_degrees),
                    "hnt_limit": format_hn_type(outcome.hnt_limit),
                    "strictly_polystable": outcome.strictly_polystable,
                    "feasible_set": feasible,
                }
            )
    return records


CSV_HEADER = ("stratum", "invariant", "case", "component", "hnt_limit")


def table_to_csv(table: IncidenceTable) -> str:
    """One line per (stratum, invariant, outcome) under the fixed header."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in table.rows:
        for key, outcome in row.entries:
            if key is None:
                inv = ""
            elif isinstance(key, bool):
                inv = "true" if key else "false"
            else:
                inv = str(key)
            writer.writerow(
                (
                    format_hn_type(row.stratum.hn),
                    inv,
                    outcome.case_tag.value,
                    format_label(outcome.component),
                    format_hn_type(outcome.hnt_limit),
                )
            )
    return buf.getvalue()


def table_to_dot(table: IncidenceTable) -> str:
    """Bipartite reachability graph: box-shaped stratum nodes, ellipse
    fixed-component nodes, one edge per classified limit."""
    degree_id = str(table.degree).replace("-", "m")
    lines = [
        f"digraph incidence_{table.rank}_{degree_id}_g{table.genus.g} {{",
        "  rankdir=LR;",
    ]
    strata = [format_hn_type(row.stratum.hn) for row in table.rows]
    for hn_text in strata:
        lines.append(f'  "hn:{hn_text}" [shape=box];')
    for label, _ in table.bb_index:
        lines.append(f'  "bb:{format_label(label)}" [shape=ellipse];')
    edges = []
    for row in table.rows:
        hn_text = format_hn_type(row.stratum.hn)
        for _, outcome in row.entries:
            edge = f'  "hn:{hn_text}" -> "bb:{format_label(outcome.component)}";'
            if edge not in edges:
                edges.append(edge)
    lines.extend(edges)
    lines.append("}")
    return "\n".join(lines) + "\n"


def table_case_tags(table: IncidenceTable) -> list[str]:
    """Sorted case tags occurring in the table (for output metadata)."""
    tags = {outcome.case_tag.value for row in table.rows for _, outcome in row.entries}
    return sorted(tags)
