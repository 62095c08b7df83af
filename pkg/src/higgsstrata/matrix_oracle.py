"""Independent verification engine: gauge scaling of block patterns.

Conjugating z*Phi by the constant diagonal gauge g(z) = diag(z^w_i)
scales the Higgs block (i, j) by z^(1 + w_j - w_i) and the upper
triangular dbar block by z^(w_j - w_i).  The engine works at
zero/nonzero granularity: the limit computations depend only on these
exponents and on which blocks vanish, never on the entries themselves.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import CaseTag, LimitOutcome

Grid = tuple[tuple[bool, ...], ...]
IntGrid = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class BlockPattern:
    """Zero/nonzero block flags for a Higgs field and a dbar operator,
    with one Hodge weight per graded piece.

    The dbar grid must be strictly upper triangular: the holomorphic
    structure is an iterated extension along the filtration.  Weights
    need not be sorted; the engine is general even though the limit
    computations only ever use (0,1), (0,1,2) and (0,0,1).
    """

    weights: tuple[int, ...]
    higgs_blocks: Grid
    dbar_blocks: Grid

    def __post_init__(self) -> None:
        n = len(self.weights)
        for name, grid in (("higgs", self.higgs_blocks), ("dbar", self.dbar_blocks)):
            if len(grid) != n or any(len(row) != n for row in grid):
                raise ValueError(f"{name} grid must be {n}x{n}")
        for i in range(n):
            for j in range(i + 1):
                if self.dbar_blocks[i][j]:
                    raise ValueError(
                        f"dbar block ({i + 1},{j + 1}) on or below the diagonal"
                    )

    @property
    def n(self) -> int:
        return len(self.weights)


@dataclass(frozen=True)
class LimitPattern:
    """Result of letting z -> 0 on a scaled block pattern.

    Converges iff every nonzero block scales with nonnegative exponent;
    the limit keeps a block nonzero exactly when its exponent is zero.
    ``exponents`` is the Higgs exponent grid.
    """

    converges: bool
    limit_higgs: Grid
    limit_dbar: Grid
    exponents: IntGrid
    dbar_exponents: IntGrid
    divergent_blocks: tuple[tuple[str, int, int], ...]


def scale_exponents(p: BlockPattern) -> tuple[IntGrid, IntGrid]:
    """Per-block z-exponents: 1 + w_j - w_i for Higgs, w_j - w_i for dbar."""
    w = p.weights
    n = p.n
    higgs = tuple(tuple(1 + w[j] - w[i] for j in range(n)) for i in range(n))
    dbar = tuple(tuple(w[j] - w[i] for j in range(n)) for i in range(n))
    return higgs, dbar


def take_limit(p: BlockPattern) -> LimitPattern:
    """Apply the scaling and read off the limiting pattern.

    Divergence (a nonzero block with negative exponent) is a value, not
    an error; the offending blocks are listed 1-indexed.
    """
    higgs_exp, dbar_exp = scale_exponents(p)
    n = p.n
    divergent = []
    for i in range(n):
        for j in range(n):
            if p.higgs_blocks[i][j] and higgs_exp[i][j] < 0:
                divergent.append(("higgs", i + 1, j + 1))
            if p.dbar_blocks[i][j] and dbar_exp[i][j] < 0:
                divergent.append(("dbar", i + 1, j + 1))
    limit_higgs = tuple(
        tuple(p.higgs_blocks[i][j] and higgs_exp[i][j] == 0 for j in range(n))
        for i in range(n)
    )
    limit_dbar = tuple(
        tuple(p.dbar_blocks[i][j] and dbar_exp[i][j] == 0 for j in range(n))
        for i in range(n)
    )
    return LimitPattern(
        converges=not divergent,
        limit_higgs=limit_higgs,
        limit_dbar=limit_dbar,
        exponents=higgs_exp,
        dbar_exponents=dbar_exp,
        divergent_blocks=tuple(divergent),
    )


def nonzero_set(grid: Grid) -> frozenset[tuple[int, int]]:
    """1-indexed positions of the nonzero blocks."""
    return frozenset(
        (i + 1, j + 1)
        for i, row in enumerate(grid)
        for j, flag in enumerate(row)
        if flag
    )


def _grid(n: int, nonzero: set[tuple[int, int]]) -> Grid:
    return tuple(
        tuple((i + 1, j + 1) in nonzero for j in range(n)) for i in range(n)
    )


def _upper_dbar(n: int) -> Grid:
    return _grid(n, {(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)})


def _full_higgs(n: int, zero: set[tuple[int, int]] = frozenset()) -> Grid:
    all_blocks = {(i, j) for i in range(1, n + 1) for j in range(1, n + 1)}
    return _grid(n, all_blocks - set(zero))


# For each case: the block pattern the limit computation uses, the
# nonzero set of the limiting Higgs field as stated for that case, and
# (in the strictly polystable cases) the coupling that S-equivalence
# zeroes out of the configuration-space limit.
_CASE_TABLE: dict[CaseTag, tuple[BlockPattern, frozenset, frozenset]] = {}


def _register(tag, weights, higgs_zero, stated, zeroed=frozenset()):
    n = len(weights)
    pattern = BlockPattern(weights, _full_higgs(n, higgs_zero), _upper_dbar(n))
    _CASE_TABLE[tag] = (pattern, frozenset(stated), frozenset(zeroed))


_register(CaseTag.SEMISTABLE, (0,), set(), set())
for _tag in (CaseTag.RANK2, CaseTag.C1_1, CaseTag.C2_1):
    _register(_tag, (0, 1), set(), {(2, 1)})
for _tag in (CaseTag.C1_3, CaseTag.C1_4, CaseTag.C2_3, CaseTag.C2_4, CaseTag.C3_1):
    # The middle piece saturates the first coupling (case 1) or is killed
    # by the second (case 2), so the (3,1) block vanishes identically.
    _register(_tag, (0, 1, 2), {(3, 1)}, {(2, 1), (3, 2)})
_register(CaseTag.C1_2, (0, 1, 2), {(3, 1)}, {(2, 1)}, zeroed={(3, 2)})
_register(CaseTag.C2_2, (0, 1, 2), {(3, 1)}, {(3, 2)}, zeroed={(2, 1)})
# Case 3.2 refines the two-block computation on (E2, E/E2) to the pieces
# (E1, E2/E1, E/E2), where the S-equivalence step is visible: the limit
# keeps both bottom-row couplings and the polystable representative
# drops the one out of E2/E1.
_register(CaseTag.C3_2, (0, 0, 1), set(), {(3, 1)}, zeroed={(3, 2)})


def oracle_check(outcome: LimitOutcome) -> bool:
    """Replay the gauge-scaling computation for the outcome's case and
    compare with the stated limiting Higgs pattern.

    For stable limits the patterns must match exactly.  For strictly
    polystable limits the stated pattern must be contained in the
    computed one, with the difference being exactly the single
    exponent-zero coupling that S-equivalence removes.
    """
    try:
        pattern, stated, zeroed = _CASE_TABLE[outcome.case_tag]
    except KeyError:
        raise ValueError(f"unknown case tag {outcome.case_tag!r}") from None
    limit = take_limit(pattern)
    if not limit.converges:
        return False
    computed = nonzero_set(limit.limit_higgs)
    if not outcome.strictly_polystable:
        return computed == stated
    return stated < computed and computed - stated == zeroed and len(zeroed) == 1


# ---------------------------------------------------------------------------
# Text format: weights line "w:0,1,2", then n rows of '.'/'*' for the
# Higgs grid, then n rows for the dbar grid.


def format_block_pattern(p: BlockPattern) -> str:
    def rows(grid: Grid) -> list[str]:
        return ["".join("*" if flag else "." for flag in row) for row in grid]

    lines = ["w:" + ",".join(str(w) for w in p.weights)]
    lines.extend(rows(p.higgs_blocks))
    lines.extend(rows(p.dbar_blocks))
    return "\n".join(lines)


def parse_block_pattern(text: str) -> BlockPattern:
    lines = [line.strip() for line in text.strip().splitlines() if line.strip()]
    if not lines or not lines[0].startswith("w:"):
        raise ValueError("block pattern must start with a 'w:' weights line")
    weights = tuple(int(x) for x in lines[0][2:].split(","))
    n = len(weights)
    if len(lines) != 1 + 2 * n:
        raise ValueError(f"expected {2 * n} grid rows, got {len(lines) - 1}")

    def grid(rows: list[str]) -> Grid:
        if any(len(row) != n for row in rows):
            raise ValueError(f"grid rows must have width {n}")
        return tuple(tuple(c == "*" for c in row) for row in rows)

    return BlockPattern(weights, grid(lines[1 : 1 + n]), grid(lines[1 + n :]))
