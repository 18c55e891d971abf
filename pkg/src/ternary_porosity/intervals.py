"""Open-interval gap-list algebra over exact rationals.

A closed subset of [0,1] is represented by the finite list of maximal-ish
open "gaps" removed from it.  The one non-obvious rule: gaps that *touch*
at a point are never merged, because the shared endpoint belongs to the
closed set.  Merging would silently delete surviving boundary points.

The ambient space is the whole real line: windows extending past 0 or 1
see the exterior as empty space.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence


@dataclass(frozen=True)
class OpenInterval:
    """Nonempty bounded open interval (lo, hi); lo < hi strictly."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if not self.lo < self.hi:
            raise ValueError(f"degenerate interval ({self.lo}, {self.hi})")

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    @property
    def half_length(self) -> Fraction:
        return (self.hi - self.lo) / 2

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x: Fraction) -> bool:
        return self.lo < x < self.hi

    def __repr__(self) -> str:
        return f"({self.lo}, {self.hi})"


@dataclass(frozen=True)
class GapList:
    """Canonical gap list: sorted, non-overlapping open subintervals of (0,1).

    Touching gaps are allowed (and kept separate); overlapping gaps are not.
    Construct via :func:`normalize`.
    """

    gaps: tuple[OpenInterval, ...]

    def __iter__(self) -> Iterator[OpenInterval]:
        return iter(self.gaps)

    def __len__(self) -> int:
        return len(self.gaps)

    def __getitem__(self, i: int) -> OpenInterval:
        return self.gaps[i]


#: Maximal open subintervals of a query window disjoint from the closed set.
WindowComponents = tuple[OpenInterval, ...]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def normalize(raw: Iterable[OpenInterval | tuple[Fraction, Fraction]]) -> GapList:
    """Canonical form of a union of open gaps within [0,1].

    Overlapping inputs are merged; touching inputs are kept separate (the
    open union of touching open intervals omits the touch point, which
    therefore survives in the closed set).  Order-insensitive, idempotent.
    """
    items: list[OpenInterval] = []
    for g in raw:
        if not isinstance(g, OpenInterval):
            g = OpenInterval(*g)
        if g.lo < _ZERO or g.hi > _ONE:
            raise ValueError(f"gap {g} reaches outside [0, 1]")
        items.append(g)
    items.sort(key=lambda g: (g.lo, g.hi))
    merged: list[OpenInterval] = []
    for g in items:
        if merged and g.lo < merged[-1].hi:
            last = merged[-1]
            if g.hi > last.hi:
                merged[-1] = OpenInterval(last.lo, g.hi)
        else:
            merged.append(g)
    return GapList(tuple(merged))


def window_components(gaps: GapList, lo: Fraction, hi: Fraction) -> WindowComponents:
    """Maximal open subintervals of (lo, hi) disjoint from the closed set.

    Includes the exterior rays clipped to the window: everything left of 0
    and right of 1 is empty space.  Components touching at a surviving
    point (such as 0, 1, or a shared gap endpoint) stay separate.
    """
    lo = Fraction(lo)
    hi = Fraction(hi)
    if not lo < hi:
        raise ValueError("window requires lo < hi")
    comps: list[OpenInterval] = []
    if lo < _ZERO:
        comps.append(OpenInterval(lo, min(hi, _ZERO)))
        if hi <= _ZERO:
            return tuple(comps)
    for g in gaps:
        a = max(g.lo, lo)
        b = min(g.hi, hi)
        if a < b:
            comps.append(OpenInterval(a, b))
    if hi > _ONE and lo < hi:
        a = max(lo, _ONE)
        if a < hi:
            comps.append(OpenInterval(a, hi))
    return tuple(comps)


def point_in_closed(gaps: GapList, x: Fraction) -> bool:
    """True iff x lies in [0,1] and inside no gap."""
    x = Fraction(x)
    if x < _ZERO or x > _ONE:
        return False
    los = [g.lo for g in gaps.gaps]
    i = bisect_right(los, x) - 1
    if i >= 0 and gaps[i].contains(x):
        return False
    return True


def dist_to_closed(gaps: GapList, x: Fraction) -> Fraction:
    """Exact distance from x to the closed set [0,1] minus the gaps.

    The closed set always contains 0 and 1 (gaps are open and within
    [0,1]), so it is never empty; guarded anyway.
    """
    x = Fraction(x)
    if x < _ZERO:
        return -x
    if x > _ONE:
        return x - _ONE
    los = [g.lo for g in gaps.gaps]
    i = bisect_right(los, x) - 1
    if i >= 0 and gaps[i].contains(x):
        g = gaps[i]
        return min(x - g.lo, g.hi - x)
    return _ZERO
