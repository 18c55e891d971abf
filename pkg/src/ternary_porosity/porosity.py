"""Porosity functionals: exact gamma and delta, with depth stabilization.

For interval sets, gamma(x, h, M) is half the length of the largest maximal
open subinterval of (x-h, x+h) disjoint from M; delta = 2*gamma/h.

For lazy truncations, levels are added in ascending order and the
computation stops as soon as gamma_N >= 3^-(N+1): every deeper level only
adds gaps of half-length strictly below that bound, and deepening never
merges existing empty components, so the value is already final.  When the
depth cap is hit without the criterion, the result is flagged as a lower
bound rather than silently approximated.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .intervals import GapList, OpenInterval, window_components
from .rat import dec_str, rat_str
from .ternary import (
    ComplementBlocks,
    LevelIndexSpec,
    PaperBlocks,
    TernaryDepthSet,
    lazy_truncation,
    level_gaps_in_window,
    member,
)
from .intervals import normalize

_ZERO = Fraction(0)
QUARTER = Fraction(1, 4)

SetLike = Union[TernaryDepthSet, GapList]


@dataclass(frozen=True)
class GammaResult:
    """Exact gamma value with attaining witness and depth certificate."""

    value: Fraction
    witness_center: Optional[Fraction]
    depth_used: int
    stabilized: bool


@dataclass(frozen=True)
class ProfileSample:
    h: Fraction
    gamma: Fraction
    delta: Fraction
    stabilized: bool


@dataclass(frozen=True)
class Profile:
    """Scale profile of delta at one point over an explicit h-grid.

    A finite-scale estimate only; the limit quantities behind upper/lower
    porosity are never computed here.
    """

    point: Fraction
    samples: tuple[ProfileSample, ...]
    min_delta: Fraction
    argmin_h: Fraction
    max_delta: Fraction
    argmax_h: Fraction


@dataclass(frozen=True)
class ScaleWindow:
    """The level-n radius window [4/3^(n+1), 4/3^n].

    Consecutive windows share exactly one endpoint and their union over
    all n >= 1 is (0, 4/3].
    """

    level: int

    @property
    def lo(self) -> Fraction:
        return Fraction(4, 3 ** (self.level + 1))

    @property
    def hi(self) -> Fraction:
        return Fraction(4, 3**self.level)


def _best_component(comps: Sequence[OpenInterval]) -> tuple[Fraction, Optional[Fraction]]:
    """Max half-length and the leftmost attaining midpoint (tie-break rule)."""
    best = _ZERO
    witness: Optional[Fraction] = None
    for c in comps:
        hl = c.half_length
        if hl > best:
            best = hl
            witness = c.midpoint
    return best, witness


def _stabilization_bound(depth: int) -> Fraction:
    return Fraction(1, 3 ** (depth + 1))


def gamma(target: SetLike, x: Fraction, h: Fraction) -> GammaResult:
    """Largest-empty-ball radius inside (x-h, x+h), exactly.

    Accepts a materialized GapList (always exact) or a TernaryDepthSet
    (lazy windowed evaluation with iterative deepening up to its depth).
    """
    x = Fraction(x)
    h = Fraction(h)
    if h <= 0:
        raise ValueError("radius h must be positive")
    lo, hi = x - h, x + h
    if isinstance(target, GapList):
        value, witness = _best_component(window_components(target, lo, hi))
        return GammaResult(value, witness, 0, True)

    spec = target.spec
    raw: list[OpenInterval] = []
    value, witness = _best_component(window_components(GapList(()), lo, hi))
    depth_used = 0
    for n in spec.levels_upto(target.depth):
        raw.extend(level_gaps_in_window(n, lo, hi).gaps)
        value, witness = _best_component(
            window_components(normalize(raw), lo, hi)
        )
        depth_used = n
        if value >= _stabilization_bound(n):
            return GammaResult(value, witness, n, True)
    stabilized = value >= _stabilization_bound(target.depth) or not spec.has_levels_above(
        target.depth
    )
    return GammaResult(value, witness, target.depth, stabilized)


def gamma_at_depth(
    spec: LevelIndexSpec, x: Fraction, h: Fraction, depth: int
) -> GammaResult:
    """Gamma using every selected level <= depth, with no early stop."""
    x = Fraction(x)
    h = Fraction(h)
    if h <= 0:
        raise ValueError("radius h must be positive")
    lo, hi = x - h, x + h
    raw: list[OpenInterval] = []
    for n in spec.levels_upto(depth):
        raw.extend(level_gaps_in_window(n, lo, hi).gaps)
    value, witness = _best_component(window_components(normalize(raw), lo, hi))
    stabilized = value >= _stabilization_bound(depth) or not spec.has_levels_above(depth)
    return GammaResult(value, witness, depth, stabilized)


def delta(target: SetLike, x: Fraction, h: Fraction) -> Fraction:
    """Porosity ratio 2*gamma(x, h)/h, exactly."""
    return 2 * gamma(target, x, h).value / Fraction(h)


def delta_product(delta_a: Fraction, delta_b: Fraction) -> Fraction:
    """Product-set delta in the max metric: the max of the factor deltas.

    Both inputs must be delta values at the same radius h.
    """
    return max(Fraction(delta_a), Fraction(delta_b))


def quarter_bound_check(
    spec: LevelIndexSpec,
    depth: int,
    x: Fraction,
    n: int,
    samples: int = 25,
) -> bool:
    """Check delta(x, h) >= 1/4 on a sampled grid over the level-n window.

    Samples are the window endpoints plus equally spaced interior
    rationals; comparisons are exact, but the result is a sampled check,
    not a proof over the continuum.
    """
    x = Fraction(x)
    if samples < 2:
        raise ValueError("need at least the two window endpoints")
    if not spec.contains(n):
        raise ValueError(f"level {n} is not in the index set")
    if n > depth:
        raise ValueError(f"level {n} exceeds the truncation depth {depth}")
    if not member(spec, depth, x):
        raise ValueError(f"point {x} is not in the truncation")
    window = ScaleWindow(n)
    lo, hi = window.lo, window.hi
    target = lazy_truncation(spec, depth)
    step = (hi - lo) / (samples - 1)
    for j in range(samples):
        h = lo + j * step
        if delta(target, x, h) < QUARTER:
            return False
    return True


def scale_profile(
    target: SetLike, x: Fraction, grid: Sequence[Fraction]
) -> Profile:
    """Exact (h, gamma, delta) samples over an explicit grid of radii."""
    if not grid:
        raise ValueError("grid must be nonempty")
    x = Fraction(x)
    samples = []
    for h in grid:
        h = Fraction(h)
        g = gamma(target, x, h)
        samples.append(ProfileSample(h, g.value, 2 * g.value / h, g.stabilized))
    min_s = min(samples, key=lambda s: s.delta)
    max_s = max(samples, key=lambda s: s.delta)
    return Profile(
        point=x,
        samples=tuple(samples),
        min_delta=min_s.delta,
        argmin_h=min_s.h,
        max_delta=max_s.delta,
        argmax_h=max_s.h,
    )


def epsilon_net_check(
    points: Sequence[Fraction], eps: Fraction, lo: Fraction, hi: Fraction
) -> bool:
    """True iff every point of [lo, hi] is within eps of some listed point.

    Decided exactly by sweeping the coverage intervals [p-eps, p+eps] of
    the (sorted) points over the window.
    """
    lo = Fraction(lo)
    hi = Fraction(hi)
    eps = Fraction(eps)
    if lo > hi:
        raise ValueError("window requires lo <= hi")
    if not points:
        return False
    covered = lo
    for p in points:
        p = Fraction(p)
        if p - eps > covered:
            break
        covered = max(covered, p + eps)
        if covered >= hi:
            return True
    return covered >= hi


@dataclass(frozen=True)
class TheoremScaleResult:
    x: Fraction
    boundary_level: int
    block_index: int
    depth: int
    h: Fraction
    delta: Fraction
    expected: Fraction
    equal: bool


def theorem_scale_equality(
    x: Fraction, n0: int, i: int, depth: Optional[int] = None
) -> TheoremScaleResult:
    """Exact check of the distinguished-scale identity for the interleaved set.

    For a level-n0 gap endpoint x (n0 in the quadratic blocks) that survives
    in the complement-blocks set, the ratio delta at radius h = 3^-(i^2-1)
    equals 3^-(i+1) exactly, provided i^2 > n0.  Computed against the
    complement-blocks truncation at depth >= i^2 + i + 2.
    """
    x = Fraction(x)
    t = x * 3**n0
    if t.denominator != 1 or not (1 <= t.numerator <= 3**n0 - 1):
        raise ValueError(f"{x} is not of the form k/3^{n0} inside (0, 1)")
    if t.numerator % 3 == 0:
        raise ValueError(f"{x} is not a level-{n0} gap endpoint (k divisible by 3)")
    if not PaperBlocks().contains(n0):
        raise ValueError(f"level {n0} is not in the quadratic-block index set")
    if i * i <= n0:
        raise ValueError(f"need i^2 > n0 (got i={i}, n0={n0})")
    min_depth = i * i + i + 2
    depth = min_depth if depth is None else max(depth, min_depth)
    if not member(ComplementBlocks(), depth, x):
        raise ValueError(f"{x} is not in the complement-blocks truncation")
    h = Fraction(1, 3 ** (i * i - 1))
    d = delta(lazy_truncation(ComplementBlocks(), depth), x, h)
    expected = Fraction(1, 3 ** (i + 1))
    return TheoremScaleResult(
        x=x,
        boundary_level=n0,
        block_index=i,
        depth=depth,
        h=h,
        delta=d,
        expected=expected,
        equal=d == expected,
    )


# ---------------------------------------------------------------------------
# Profile CSV
# ---------------------------------------------------------------------------

PROFILE_CSV_HEADER = [
    "h_rat",
    "h_dec",
    "gamma_rat",
    "gamma_dec",
    "delta_rat",
    "delta_dec",
    "stabilized",
]


def profile_csv(profile: Profile) -> str:
    """Render a Profile as CSV (rationals exact, decimals for convenience)."""
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(PROFILE_CSV_HEADER)
    for s in profile.samples:
        writer.writerow(
            [
                rat_str(s.h),
                dec_str(s.h),
                rat_str(s.gamma),
                dec_str(s.gamma),
                rat_str(s.delta),
                dec_str(s.delta),
                "true" if s.stabilized else "false",
            ]
        )
    return buf.getvalue()
