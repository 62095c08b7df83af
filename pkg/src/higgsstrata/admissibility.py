"""Slope bounds on Harder-Narasimhan types of semistable Higgs bundles.

For rank 3 both consecutive slope gaps are bounded by the canonical
degree 2g-2; for unstable rank 2 the subline degree satisfies
d < 2*d1 <= d + 2g-2.  These bounds make the set of admissible types
finite for each (rank, degree, genus), which is what every enumeration
and sweep in this package relies on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .core import Genus, HNType, StrataError, polygon_of


class AdmissibilityError(StrataError):
    """An HN type violates the semistability bounds."""


class RankUnsupported(AdmissibilityError):
    pass


class Rank2BoundViolated(AdmissibilityError):
    pass


class Rank3BoundViolated(AdmissibilityError):
    pass


@dataclass(frozen=True)
class AdmissibleStratum:
    """A Shatz stratum label that passes the slope bounds for its genus.

    "Admissible" means the bounds necessary for the stratum to contain a
    semistable Higgs bundle hold; nonemptiness in the actual moduli
    space is not certified.
    """

    hn: HNType
    genus: Genus

    @property
    def mu(self) -> Fraction:
        return self.hn.slope

    @property
    def mu_vector(self) -> tuple[Fraction, ...]:
        return self.hn.mu_vector

    @property
    def is_semistable(self) -> bool:
        return self.hn.is_semistable

    def __str__(self) -> str:
        return str(self.hn)


def validate(hn: HNType, genus: Genus) -> AdmissibleStratum:
    """Check the slope bounds, naming the violated inequality on failure."""
    k = genus.canonical_degree
    rank = hn.total_rank
    if rank == 2:
        if not hn.is_semistable:
            mu1, mu2 = hn.mu_vector
            if mu1 - mu2 > k:
                raise Rank2BoundViolated(
                    f"2*d1 - d = {mu1 - mu2} exceeds 2g-2 = {k} for {hn}"
                )
        return AdmissibleStratum(hn, genus)
    if rank == 3:
        if not hn.is_semistable:
            mu1, mu2, mu3 = hn.mu_vector
            if mu1 - mu2 > k:
                raise Rank3BoundViolated(f"mu1 - mu2 = {mu1 - mu2} > 2g-2 = {k} for {hn}")
            if mu2 - mu3 > k:
                raise Rank3BoundViolated(f"mu2 - mu3 = {mu2 - mu3} > 2g-2 = {k} for {hn}")
        return AdmissibleStratum(hn, genus)
    raise RankUnsupported(f"only ranks 2 and 3 are supported, got {rank}")


def _sort_key(stratum: AdmissibleStratum):
    # Ascending polygon height profile is a linear extension of dominance
    # (semistable first, most unstable last); step tuples break ties.
    poly = polygon_of(stratum.hn)
    heights = tuple(poly.height_at(x) for x in range(1, stratum.hn.total_rank))
    return (heights, stratum.hn.steps)


def enumerate_strata(rank: int, degree: int, genus: Genus) -> list[AdmissibleStratum]:
    """Every admissible HN type of the given rank and degree.

    Includes the semistable type; finite by the slope bounds; sorted by
    polygon dominance, then lexicographically by steps.
    """
    k = genus.canonical_degree
    d = degree
    found: list[HNType] = []
    if rank == 2:
        found.append(HNType(((2, d),)))
        # d < 2*d1 <= d + 2g-2
        for d1 in range(d // 2 + 1, (d + k) // 2 + 1):
            found.append(HNType(((1, d1), (1, d - d1))))
    elif rank == 3:
        found.append(HNType(((3, d),)))
        # Type (1,2): line over a semistable rank-2 quotient.
        # 0 < mu1 - mu2 = (3a-d)/2 <= 2g-2.
        for a in range(d // 3 + 1, (d + 2 * k) // 3 + 1):
            found.append(HNType(((1, a), (2, d - a))))
        # Type (2,1): semistable rank-2 sub over a line.
        # 0 < mu2 - mu3 = (3e-2d)/2 <= 2g-2.
        for e in range((2 * d) // 3 + 1, (2 * d + 2 * k) // 3 + 1):
            found.append(HNType(((2, e), (1, d - e))))
        # Three distinct integer slopes a > b > c with both gaps <= 2g-2.
        for a in range(d // 3 + 1, d // 3 + 2 * k + 2):
            for b in range(a - k, a):
                c = d - a - b
                if c < b and b - c <= k:
                    found.append(HNType(((1, a), (1, b), (1, c))))
    else:
        raise RankUnsupported(f"only ranks 2 and 3 are supported, got {rank}")
    strata = [validate(hn, genus) for hn in found]
    strata.sort(key=_sort_key)
    return strata


class CaseFamily(Enum):
    """Position of mu2 relative to the total slope decides the free datum."""

    CASE1_I = "1-I"
    CASE2_N = "2-N"
    CASE3_FLAG = "3-flag"
    NONE = "none"


def case_family(stratum: AdmissibleStratum) -> CaseFamily:
    if stratum.is_semistable:
        return CaseFamily.NONE
    if stratum.hn.total_rank != 3:
        raise RankUnsupported("case families are defined for rank 3 only")
    mu2 = stratum.mu_vector[1]
    if mu2 < stratum.mu:
        return CaseFamily.CASE1_I
    if mu2 > stratum.mu:
        return CaseFamily.CASE2_N
    return CaseFamily.CASE3_FLAG


@dataclass(frozen=True)
class InvariantRange:
    """Feasible values of the auxiliary slope invariant of a stratum.

    The closed interval is the a-priori bound on the invariant; the
    isolated point is the extra value allowed at the far end of the
    excluded open gap (the interior of which is infeasible because the
    HN polygon rises under specialization).  ``feasible_integers``
    collects every integer in the interval plus the isolated point.
    """

    case_family: CaseFamily
    interval_low: Fraction | None
    interval_high: Fraction | None
    isolated_point: Fraction | None
    feasible_integers: tuple[int, ...]


def _integers_in(low: Fraction, high: Fraction) -> list[int]:
    if low > high:
        return []
    return list(range(math.ceil(low), math.floor(high) + 1))


def invariant_range(stratum: AdmissibleStratum) -> InvariantRange:
    """Interval, isolated point and feasible integers for mu(I) or mu(N)."""
    if stratum.hn.total_rank != 3:
        raise RankUnsupported("invariant ranges are defined for rank 3 only")
    if stratum.is_semistable:
        return InvariantRange(CaseFamily.NONE, None, None, None, ())
    family = case_family(stratum)
    k = stratum.genus.canonical_degree
    mu1, mu2, mu3 = stratum.mu_vector
    if family is CaseFamily.CASE1_I:
        low, high = mu1 - k, mu3
        isolated = mu2 if mu2 > mu3 else None
    elif family is CaseFamily.CASE2_N:
        low, high = mu1 + mu2 - mu3 - k, mu2
        isolated = mu1 if mu1 > mu2 else None
    else:
        # Case 3: the free datum is the alignment flag, not a slope.
        return InvariantRange(family, None, None, None, ())
    feasible = _integers_in(low, high)
    if isolated is not None and isolated.denominator == 1:
        feasible.append(int(isolated))
    return InvariantRange(family, low, high, isolated, tuple(sorted(set(feasible))))
