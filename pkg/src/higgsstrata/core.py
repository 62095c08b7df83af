"""Exact arithmetic and the shared vocabulary of stratum labels.

Slopes, Harder-Narasimhan data, fixed-component labels and limit
outcomes are immutable values built on exact rationals; nothing in this
package ever touches floating point, because strict-versus-non-strict
comparisons at rational thresholds decide which classification case
applies.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Union

#: Exact rational number used for every slope and threshold.  The
#: stdlib type already maintains the needed invariants: lowest terms,
#: positive denominator, exact total order.
Rational = Fraction


class StrataError(Exception):
    """Base class for every domain error raised by this package."""


def slope(rank: int, degree: int) -> Fraction:
    """Slope degree/rank of a bundle, in lowest terms."""
    if rank < 1:
        raise ValueError(f"rank must be a positive integer, got {rank}")
    return Fraction(degree, rank)


def format_rational(q: Fraction | int) -> str:
    """Render as "p/q", or bare "p" when the denominator is 1."""
    return str(Fraction(q))


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


@dataclass(frozen=True)
class Genus:
    """Genus of the base curve; the theory requires g >= 2."""

    g: int

    def __post_init__(self) -> None:
        if self.g < 2:
            raise ValueError(f"genus must be >= 2, got {self.g}")

    @property
    def canonical_degree(self) -> int:
        return 2 * self.g - 2


@dataclass(frozen=True)
class HNType:
    """Harder-Narasimhan type: (rank, degree) subquotients, steepest first.

    Consecutive steps of equal slope are merged at construction, so
    ``HNType(((1, 1), (1, 0), (1, 0)))`` normalizes to
    ``HNType(((1, 1), (2, 0)))``.  After merging, subquotient slopes
    must be strictly decreasing.  A single step means the semistable
    type.
    """

    steps: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        raw = tuple((int(r), int(d)) for r, d in self.steps)
        if not raw:
            raise ValueError("HN type needs at least one step")
        if any(r < 1 for r, _ in raw):
            raise ValueError(f"step ranks must be positive: {raw}")
        merged: list[tuple[int, int]] = []
        for r, d in raw:
            if merged and Fraction(d, r) == Fraction(merged[-1][1], merged[-1][0]):
                pr, pd = merged.pop()
                merged.append((pr + r, pd + d))
            else:
                merged.append((r, d))
        slopes = [Fraction(d, r) for r, d in merged]
        if any(nxt >= prev for prev, nxt in zip(slopes, slopes[1:])):
            raise ValueError(f"subquotient slopes must be strictly decreasing: {raw}")
        object.__setattr__(self, "steps", tuple(merged))

    @property
    def total_rank(self) -> int:
        return sum(r for r, _ in self.steps)

    @property
    def total_degree(self) -> int:
        return sum(d for _, d in self.steps)

    @property
    def slope(self) -> Fraction:
        return Fraction(self.total_degree, self.total_rank)

    @property
    def is_semistable(self) -> bool:
        return len(self.steps) == 1

    @property
    def mu_vector(self) -> tuple[Fraction, ...]:
        """Subquotient slopes repeated with multiplicity, non-increasing."""
        out: list[Fraction] = []
        for r, d in self.steps:
            out.extend([Fraction(d, r)] * r)
        return tuple(out)

    def __str__(self) -> str:
        return format_hn_type(self)


def format_hn_type(hn: HNType) -> str:
    """Canonical text encoding: comma-separated "rank:degree" pairs."""
    return ",".join(f"{r}:{d}" for r, d in hn.steps)


def parse_hn_type(text: str) -> HNType:
    steps = []
    for part in text.strip().split(","):
        rank_s, _, deg_s = part.partition(":")
        if not deg_s:
            raise ValueError(f"bad HN step {part!r}, expected rank:degree")
        steps.append((int(rank_s), int(deg_s)))
    return HNType(tuple(steps))


@dataclass(frozen=True)
class HNPolygon:
    """Convex polygon of cumulative (rank, degree) pairs from (0,0)."""

    vertices: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        v = tuple((int(r), int(d)) for r, d in self.vertices)
        if len(v) < 2 or v[0] != (0, 0):
            raise ValueError(f"polygon must start at (0,0): {v}")
        segs = list(zip(v, v[1:]))
        if any(r1 <= r0 for (r0, _), (r1, _) in segs):
            raise ValueError(f"cumulative ranks must strictly increase: {v}")
        slopes = [Fraction(d1 - d0, r1 - r0) for (r0, d0), (r1, d1) in segs]
        if any(b >= a for a, b in zip(slopes, slopes[1:])):
            raise ValueError(f"polygon is not strictly convex: {v}")
        object.__setattr__(self, "vertices", v)

    @property
    def total_rank(self) -> int:
        return self.vertices[-1][0]

    @property
    def total_degree(self) -> int:
        return self.vertices[-1][1]

    def height_at(self, x: int | Fraction) -> Fraction:
        """Exact height of the piecewise-linear upper boundary at rank x."""
        x = Fraction(x)
        for (r0, d0), (r1, d1) in zip(self.vertices, self.vertices[1:]):
            if r0 <= x <= r1:
                return d0 + Fraction(d1 - d0, r1 - r0) * (x - r0)
        raise ValueError(f"rank {x} outside polygon range 0..{self.total_rank}")


def polygon_of(hn: HNType) -> HNPolygon:
    """Polygon of partial (rank, degree) sums; convex by the HN invariant."""
    vertices = [(0, 0)]
    for r, d in hn.steps:
        pr, pd = vertices[-1]
        vertices.append((pr + r, pd + d))
    return HNPolygon(tuple(vertices))


def dominates(p: HNPolygon, q: HNPolygon) -> bool:
    """True iff p lies on or above q at every intermediate integer rank.

    This is the partial order in which the polygon rises under
    specialization; both polygons must share the endpoints (0,0) and
    (r,d).
    """
    if p.vertices[-1] != q.vertices[-1]:
        raise ValueError(
            f"polygons have different endpoints: {p.vertices[-1]} vs {q.vertices[-1]}"
        )
    return all(p.height_at(x) >= q.height_at(x) for x in range(1, p.total_rank))


# ---------------------------------------------------------------------------
# Fixed-component labels


@dataclass(frozen=True)
class Min:
    """The minimal fixed component: semistable bundles with zero Higgs field."""

    rank: int
    degree: int


@dataclass(frozen=True)
class Rank2:
    """Rank-2 fixed component indexed by the degree d1 of the subline."""

    d1: int


@dataclass(frozen=True)
class Type12:
    """Hodge bundle of type (1,2): line of weight 0, rank-2 piece of weight 1."""

    deg_sub: int
    deg_quot_pair: int


@dataclass(frozen=True)
class Type21:
    """Hodge bundle of type (2,1): rank-2 piece of weight 0, line of weight 1."""

    deg_sub_pair: int
    deg_quot: int


@dataclass(frozen=True)
class Type111:
    """Hodge bundle of type (1,1,1); l1, l2, l3 are the weight-ordered degrees."""

    l1: int
    l2: int
    l3: int

    @property
    def degrees(self) -> tuple[int, int, int]:
        return (self.l1, self.l2, self.l3)


@dataclass(frozen=True)
class HodgeSummand:
    """One stable summand of a polystable Hodge bundle: weight-ordered degrees."""

    degrees: tuple[int, ...]
    weights: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if len(self.degrees) != len(self.weights):
            raise ValueError("summand degrees and weights must have equal length")


def line_summand(degree: int) -> HodgeSummand:
    return HodgeSummand((degree,), (0,))


def coupled_summand(deg_w0: int, deg_w1: int) -> HodgeSummand:
    return HodgeSummand((deg_w0, deg_w1), (0, 1))


@dataclass(frozen=True)
class PolystableSum:
    """Strictly polystable limit: an unordered direct sum of stable summands.

    Summands are canonicalized (higher rank first, then by degrees) so
    that numerically identical limits reached through different cases
    compare equal.
    """

    summands: tuple[HodgeSummand, ...]

    def __post_init__(self) -> None:
        canon = tuple(
            sorted(self.summands, key=lambda s: (-len(s.degrees), s.degrees))
        )
        if not canon:
            raise ValueError("polystable sum needs at least one summand")
        object.__setattr__(self, "summands", canon)


FixedComponentLabel = Union[Min, Rank2, Type12, Type21, Type111, PolystableSum]


def format_label(label: FixedComponentLabel) -> str:
    if isinstance(label, Min):
        return "min"
    if isinstance(label, Rank2):
        return f"r2:{label.d1}"
    if isinstance(label, Type12):
        return f"t12:{label.deg_sub}|{label.deg_quot_pair}"
    if isinstance(label, Type21):
        return f"t21:{label.deg_sub_pair}|{label.deg_quot}"
    if isinstance(label, Type111):
        return f"t111:{label.l1},{label.l2},{label.l3}"
    if isinstance(label, PolystableSum):
        parts = "+".join(
            "[" + ",".join(str(d) for d in s.degrees) + "]" for s in label.summands
        )
        return f"poly:{parts}"
    raise TypeError(f"not a fixed-component label: {label!r}")


def parse_label(
    text: str, *, rank: int | None = None, degree: int | None = None
) -> FixedComponentLabel:
    """Inverse of format_label; "min" needs the ambient rank and degree."""
    text = text.strip()
    if text == "min":
        if rank is None or degree is None:
            raise ValueError("parsing 'min' requires ambient rank and degree")
        return Min(rank, degree)
    kind, _, rest = text.partition(":")
    if kind == "r2":
        return Rank2(int(rest))
    if kind in ("t12", "t21"):
        a, _, b = rest.partition("|")
        return Type12(int(a), int(b)) if kind == "t12" else Type21(int(a), int(b))
    if kind == "t111":
        l1, l2, l3 = (int(x) for x in rest.split(","))
        return Type111(l1, l2, l3)
    if kind == "poly":
        summands = []
        for part in rest.split("+"):
            degs = tuple(int(x) for x in part.strip("[]").split(","))
            summands.append(HodgeSummand(degs, tuple(range(len(degs)))))
        return PolystableSum(tuple(summands))
    raise ValueError(f"unrecognized component label {text!r}")


# ---------------------------------------------------------------------------
# Limit outcomes


class CaseTag(Enum):
    """Which branch of the limit classification fired."""

    SEMISTABLE = "ss"
    RANK2 = "rk2"
    C1_1 = "1.1"
    C1_2 = "1.2"
    C1_3 = "1.3"
    C1_4 = "1.4"
    C2_1 = "2.1"
    C2_2 = "2.2"
    C2_3 = "2.3"
    C2_4 = "2.4"
    C3_1 = "3.1"
    C3_2 = "3.2"


STRICTLY_POLYSTABLE_TAGS = frozenset({CaseTag.C1_2, CaseTag.C2_2, CaseTag.C3_2})


@dataclass(frozen=True)
class LimitOutcome:
    """Full description of the limiting Hodge bundle of a downward flow.

    ``graded_degrees`` lists the degrees of the summands of the limit's
    associated graded bundle in Hodge-weight order (weight 0 first); for
    strictly polystable limits the order follows the canonical summand
    list of the component, each summand internally weight-ordered.
    ``hnt_limit`` carries the slope-ordered data separately, since the
    two orders genuinely differ.
    """

    case_tag: CaseTag
    component: FixedComponentLabel
    graded_degrees: tuple[int, ...]
    hnt_limit: HNType
    strictly_polystable: bool

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "graded_degrees", tuple(int(d) for d in self.graded_degrees)
        )
        if self.strictly_polystable != (self.case_tag in STRICTLY_POLYSTABLE_TAGS):
            raise ValueError(
                f"strictly_polystable flag inconsistent with case {self.case_tag.value}"
            )
        if sum(self.graded_degrees) != self.hnt_limit.total_degree:
            raise ValueError(
                f"graded degrees {self.graded_degrees} do not sum to "
                f"{self.hnt_limit.total_degree}"
            )
