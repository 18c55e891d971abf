"""Ternary gap-set generators.

Level n removes the 3^(n-1) open middle thirds

    ((1+3i)/3^n, (2+3i)/3^n),   i = 0 .. 3^(n-1)-1,

from [0,1].  A level index set selects which generations are removed;
the quadratic-block rule keeps n iff i^2 <= n < i^2 + i for i = isqrt(n),
and its complement is the interleaved partner set.

Sets are available both materialized (as a normalized GapList, below a
configurable gap-count cap) and lazily through windowed index arithmetic,
which is the only practical access at depths where a single level already
holds millions of gaps.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from .intervals import GapList, OpenInterval, normalize

DEFAULT_GAP_CAP = 2_000_000

_ZERO = Fraction(0)
_ONE = Fraction(1)


class MaterializationCapError(ValueError):
    """Raised when a materialization would exceed the gap-count cap."""


# ---------------------------------------------------------------------------
# Level index sets
# ---------------------------------------------------------------------------


class LevelIndexSpec:
    """Decidable, enumerable set of levels n >= 1."""

    def contains(self, n: int) -> bool:
        raise NotImplementedError

    def levels_upto(self, limit: int) -> Iterator[int]:
        """Levels of the set in [1, limit], ascending."""
        for n in range(1, limit + 1):
            if self.contains(n):
                yield n

    def has_levels_above(self, limit: int) -> bool:
        raise NotImplementedError

    def __str__(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class Explicit(LevelIndexSpec):
    levels: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "levels", frozenset(self.levels))
        if not self.levels:
            raise ValueError("explicit level set must be nonempty")
        if any(n < 1 for n in self.levels):
            raise ValueError("levels must be positive integers")

    def contains(self, n: int) -> bool:
        return n in self.levels

    def has_levels_above(self, limit: int) -> bool:
        return max(self.levels) > limit

    def __str__(self) -> str:
        return "explicit:" + ",".join(str(n) for n in sorted(self.levels))


@dataclass(frozen=True)
class PaperBlocks(LevelIndexSpec):
    """Quadratic blocks: n is kept iff i^2 <= n < i^2 + i with i = isqrt(n)."""

    def contains(self, n: int) -> bool:
        if n < 1:
            return False
        i = math.isqrt(n)
        return n - i * i < i

    def has_levels_above(self, limit: int) -> bool:
        return True

    def __str__(self) -> str:
        return "blocks"


@dataclass(frozen=True)
class ComplementBlocks(LevelIndexSpec):
    """Complement of the quadratic blocks in the positive integers."""

    def contains(self, n: int) -> bool:
        return n >= 1 and not PaperBlocks().contains(n)

    def has_levels_above(self, limit: int) -> bool:
        return True

    def __str__(self) -> str:
        return "coblocks"


@dataclass(frozen=True)
class AllLevels(LevelIndexSpec):
    def contains(self, n: int) -> bool:
        return n >= 1

    def has_levels_above(self, limit: int) -> bool:
        return True

    def __str__(self) -> str:
        return "all"


def spec_contains(spec: LevelIndexSpec, n: int) -> bool:
    if n < 1:
        raise ValueError("levels start at 1")
    return spec.contains(n)


# ---------------------------------------------------------------------------
# Level gaps and boundary points
# ---------------------------------------------------------------------------


def level_gap_count(n: int) -> int:
    return 3 ** (n - 1) if n >= 1 else 0


def level_gaps(n: int, cap: int = DEFAULT_GAP_CAP) -> GapList:
    """All level-n gaps, in order.  n = 0 yields the empty list."""
    if n < 0:
        raise ValueError("level must be >= 0")
    if n == 0:
        return GapList(())
    count = level_gap_count(n)
    if count > cap:
        raise MaterializationCapError(
            f"level {n} has {count} gaps (cap {cap}); use windowed access"
        )
    p = 3**n
    return GapList(
        tuple(
            OpenInterval(Fraction(1 + 3 * i, p), Fraction(2 + 3 * i, p))
            for i in range(count)
        )
    )


def _level_index_range(n: int, lo: Fraction, hi: Fraction) -> range:
    """Indices i of level-n gaps intersecting the open window (lo, hi)."""
    p = 3**n
    t_lo = Fraction(lo) * p
    t_hi = Fraction(hi) * p
    # gap i = (1+3i, 2+3i)/3^n intersects (lo,hi) iff 3i+2 > lo*3^n and
    # 3i+1 < hi*3^n, both strict.
    i_min = math.floor((t_lo - 2) / 3) + 1
    i_max = math.ceil((t_hi - 1) / 3) - 1
    i_min = max(i_min, 0)
    i_max = min(i_max, level_gap_count(n) - 1)
    return range(i_min, i_max + 1)


def level_gaps_in_window(n: int, lo: Fraction, hi: Fraction) -> GapList:
    """Level-n gaps intersecting the open window (lo, hi), unclipped."""
    if not Fraction(lo) < Fraction(hi):
        raise ValueError("window requires lo < hi")
    if n < 1:
        return GapList(())
    p = 3**n
    return GapList(
        tuple(
            OpenInterval(Fraction(1 + 3 * i, p), Fraction(2 + 3 * i, p))
            for i in _level_index_range(n, lo, hi)
        )
    )


def boundary_points_in_window(n: int, lo: Fraction, hi: Fraction) -> list[Fraction]:
    """Endpoints of level-n gaps lying in the closed window [lo, hi], sorted."""
    if n < 1:
        raise ValueError("level must be >= 1")
    lo = Fraction(lo)
    hi = Fraction(hi)
    if lo > hi:
        raise ValueError("window requires lo <= hi")
    p = 3**n
    k_min = max(math.ceil(lo * p), 1)
    k_max = min(math.floor(hi * p), p - 1)
    return [Fraction(k, p) for k in range(k_min, k_max + 1) if k % 3 != 0]


def dist_to_level_gaps(x: Fraction, n: int) -> Fraction:
    """Exact distance from x to the union of level-n gaps."""
    if n < 1:
        raise ValueError("level must be >= 1")
    x = Fraction(x)
    p = 3**n
    t = x * p
    base = math.floor((t - 1) / 3)
    best: Optional[Fraction] = None
    last = level_gap_count(n) - 1
    for i in (base - 1, base, base + 1):
        i = min(max(i, 0), last)
        d = max(Fraction(1 + 3 * i) - t, t - Fraction(2 + 3 * i), _ZERO)
        if best is None or d < best:
            best = d
    assert best is not None
    return best / p


# ---------------------------------------------------------------------------
# Depth-truncated sets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TernaryDepthSet:
    """[0,1] minus all level gaps with level in ``spec`` and level <= ``depth``.

    ``materialized`` is the normalized gap list when the total gap count is
    below the cap, else None (windowed access only).
    """

    spec: LevelIndexSpec
    depth: int
    materialized: Optional[GapList] = None

    def gaps_in_window(
        self, lo: Fraction, hi: Fraction, max_level: Optional[int] = None
    ) -> GapList:
        """Normalized union of selected-level gaps intersecting (lo, hi)."""
        limit = self.depth if max_level is None else min(max_level, self.depth)
        raw: list[OpenInterval] = []
        for n in self.spec.levels_upto(limit):
            raw.extend(level_gaps_in_window(n, lo, hi).gaps)
        return normalize(raw)


def truncation_gap_count(spec: LevelIndexSpec, depth: int) -> int:
    return sum(level_gap_count(n) for n in spec.levels_upto(depth))


def lazy_truncation(spec: LevelIndexSpec, depth: int) -> TernaryDepthSet:
    """Truncation with windowed access only (no materialization cost)."""
    if depth < 0:
        raise ValueError("depth must be >= 0")
    return TernaryDepthSet(spec, depth, None)


def build_truncation(
    spec: LevelIndexSpec, depth: int, cap: int = DEFAULT_GAP_CAP
) -> TernaryDepthSet:
    """Truncation at the given depth, materialized when under the cap."""
    if depth < 0:
        raise ValueError("depth must be >= 0")
    if truncation_gap_count(spec, depth) > cap:
        return TernaryDepthSet(spec, depth, None)
    raw: list[OpenInterval] = []
    for n in spec.levels_upto(depth):
        raw.extend(level_gaps(n, cap=cap).gaps)
    return TernaryDepthSet(spec, depth, normalize(raw))


def member(spec: LevelIndexSpec, depth: int, x: Fraction) -> bool:
    """Membership in the depth truncation, by per-level index arithmetic.

    Deliberately independent of the GapList machinery; the brute-force
    oracles rely on this code path being separate.
    """
    x = Fraction(x)
    if x < _ZERO or x > _ONE:
        return False
    for n in spec.levels_upto(depth):
        t = x * 3**n
        k = math.floor(t)
        if t != k and k % 3 == 1:
            return False
    return True


# ---------------------------------------------------------------------------
# Set-spec grammar (shared with the CLI)
# ---------------------------------------------------------------------------

DEFAULT_DEPTH = 10

_SPEC_RE = re.compile(
    r"^(?P<body>explicit:(?P<list>-?\d+(?:,-?\d+)*)|blocks|coblocks|all)"
    r"(?:@depth:(?P<depth>-?\d+))?$"
)


@dataclass(frozen=True)
class SetSpecExpr:
    source: str
    spec: LevelIndexSpec
    depth: int

    def __str__(self) -> str:
        return f"{self.spec}@depth:{self.depth}"


def parse_set_spec(text: str) -> SetSpecExpr:
    """Parse ``"explicit:1,2,5" | "blocks" | "coblocks" | "all"`` with an
    optional ``"@depth:N"`` suffix (default depth 10)."""
    s = text.strip()
    m = _SPEC_RE.match(s)
    if m is None:
        # find the first offending position for a usable error message
        pos = 0
        for prefix in ("explicit:", "blocks", "coblocks", "all"):
            if s.startswith(prefix):
                pos = len(prefix)
                break
        raise ValueError(f"set-spec syntax error at position {pos}: {text!r}")
    depth = DEFAULT_DEPTH if m.group("depth") is None else int(m.group("depth"))
    if depth < 1:
        raise ValueError("depth must be >= 1")
    body = m.group("body")
    spec: LevelIndexSpec
    if body.startswith("explicit:"):
        levels = [int(tok) for tok in m.group("list").split(",")]
        if any(n < 1 for n in levels):
            raise ValueError("explicit levels must be positive integers")
        spec = Explicit(frozenset(levels))
    elif body == "blocks":
        spec = PaperBlocks()
    elif body == "coblocks":
        spec = ComplementBlocks()
    else:
        spec = AllLevels()
    return SetSpecExpr(source=text, spec=spec, depth=depth)
