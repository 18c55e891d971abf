"""Brute-force grid oracles and the named verification suites.

The oracles re-derive gamma from nothing but the per-level membership
predicate (index arithmetic), never touching the gap-list machinery used
by the exact engine, so an agreement between the two is meaningful.

The oracle is one-sided by construction: sampled member distances are
shrunk by one sampling step, so the oracle can underestimate the exact
gamma (by under two grid steps) but never exceed it.  A one-sided oracle
cannot mask an exact-engine overestimate, which is the dangerous failure
mode.
"""

from __future__ import annotations

import json
import math
import random
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional, Sequence

import numpy as np

from .porosity import (
    delta,
    delta_product,
    epsilon_net_check,
    gamma,
    gamma_at_depth,
    quarter_bound_check,
    theorem_scale_equality,
)
from .rat import rat_str
from .ternary import (
    AllLevels,
    ComplementBlocks,
    Explicit,
    LevelIndexSpec,
    PaperBlocks,
    TernaryDepthSet,
    boundary_points_in_window,
    build_truncation,
    lazy_truncation,
    member,
)

_INT64_SAFE = 2**62


@dataclass(frozen=True)
class OracleConfig:
    grid_step: Fraction = Fraction(1, 3**9)
    depth: int = 6

    def __post_init__(self) -> None:
        if self.grid_step <= 0:
            raise ValueError("grid_step must be positive")


@dataclass(frozen=True)
class Failure:
    instance: str
    expected: str
    actual: str


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    seed: int
    instances_run: int
    failures: tuple[Failure, ...]

    @property
    def passed(self) -> bool:
        return not self.failures


def report_to_json(report: SuiteReport) -> str:
    return json.dumps(
        {
            "suite": report.suite,
            "seed": report.seed,
            "instances_run": report.instances_run,
            "failures": [
                {"instance": f.instance, "expected": f.expected, "actual": f.actual}
                for f in report.failures
            ],
        },
        indent=2,
    )


# ---------------------------------------------------------------------------
# Scaled-integer helpers
# ---------------------------------------------------------------------------


def _common_scale(*values: Fraction) -> int:
    s = 1
    for v in values:
        s = s * v.denominator // math.gcd(s, v.denominator)
    return s


def _inside_level_gap(x: Fraction, n: int) -> bool:
    """x strictly inside some level-n gap; same rule as the member predicate."""
    t = Fraction(x) * 3**n
    k = math.floor(t)
    return t != k and k % 3 == 1


def _member_mask_scaled(
    spec: LevelIndexSpec, depth: int, ks: np.ndarray, scale: int
) -> np.ndarray:
    """Vectorized twin of the member predicate on numerators ks over scale."""
    mask = np.ones(len(ks), dtype=bool)
    for n in spec.levels_upto(depth):
        v = ks * (3**n)
        q, r = np.divmod(v, scale)
        mask &= ~((r != 0) & (q % 3 == 1))
    return mask


def _sampled_members_scaled(
    spec: LevelIndexSpec, depth: int, scale: int, sub: int
) -> np.ndarray:
    ks = np.arange(0, scale + 1, sub, dtype=np.int64)
    return ks[_member_mask_scaled(spec, depth, ks, scale)]


def _axis_arrays(
    spec: LevelIndexSpec,
    depth: int,
    x_s: int,
    h_s: int,
    step_s: int,
    sub_s: int,
    scale: int,
) -> tuple[np.ndarray, np.ndarray]:
    """Per-center window caps and shrunk member distances, scaled integers."""
    members = _sampled_members_scaled(spec, depth, scale, sub_s)
    kmax = (h_s - 1) // step_s
    offsets = np.arange(-kmax, kmax + 1, dtype=np.int64) * step_s
    centers = x_s + offsets
    caps = h_s - np.abs(offsets)
    inf = np.int64(_INT64_SAFE)
    idx = np.searchsorted(members, centers)
    left = np.where(
        idx > 0, centers - members[np.maximum(idx - 1, 0)], inf
    )
    right = np.where(
        idx < len(members), members[np.minimum(idx, len(members) - 1)] - centers, inf
    )
    dist = np.minimum(left, right)
    shrunk = np.maximum(dist - sub_s, 0)
    return caps, shrunk


def _scaled_params(
    x: Fraction, h: Fraction, step: Fraction
) -> tuple[int, int, int, int, int]:
    sub = step / 3
    scale = _common_scale(x, h, sub)
    return (
        scale,
        int(x * scale),
        int(h * scale),
        int(step * scale),
        int(sub * scale),
    )


def _int64_ok(scale: int, depth: int, x_s: int, h_s: int) -> bool:
    return (
        scale * 3**depth < _INT64_SAFE and (abs(x_s) + h_s) * 3**depth < _INT64_SAFE
    )


# ---------------------------------------------------------------------------
# Grid oracles
# ---------------------------------------------------------------------------


def gamma_oracle_1d(
    spec: LevelIndexSpec,
    depth: int,
    x: Fraction,
    h: Fraction,
    step: Fraction,
) -> Fraction:
    """Grid-search lower estimate of gamma against the depth truncation.

    Centers are spaced ``step`` apart in (x-h, x+h); the set is sampled on
    a step/3 grid through the member predicate only.
    """
    x, h, step = Fraction(x), Fraction(h), Fraction(step)
    if step <= 0:
        raise ValueError("step must be positive")
    if h <= 0:
        raise ValueError("radius h must be positive")
    scale, x_s, h_s, step_s, sub_s = _scaled_params(x, h, step)
    if step_s == 0 or not _int64_ok(scale, depth, x_s, h_s):
        return _gamma_oracle_1d_slow(spec, depth, x, h, step)
    caps, shrunk = _axis_arrays(spec, depth, x_s, h_s, step_s, sub_s, scale)
    best = int(np.minimum(caps, shrunk).max(initial=0))
    return Fraction(max(best, 0), scale)


def _gamma_oracle_1d_slow(
    spec: LevelIndexSpec,
    depth: int,
    x: Fraction,
    h: Fraction,
    step: Fraction,
) -> Fraction:
    """Pure-Fraction fallback; same semantics, any magnitudes."""
    sub = step / 3
    members: list[Fraction] = []
    k = 0
    while k * sub <= 1:
        p = k * sub
        if member(spec, depth, p):
            members.append(p)
        k += 1
    best = Fraction(0)
    kmax = math.ceil(h / step) - 1
    for j in range(-kmax, kmax + 1):
        z = x + j * step
        cap = h - abs(z - x)
        i = bisect_left(members, z)
        dist: Optional[Fraction] = None
        if i > 0:
            dist = z - members[i - 1]
        if i < len(members):
            d = members[i] - z
            dist = d if dist is None or d < dist else dist
        if dist is None:
            r = cap
        else:
            r = min(cap, max(dist - sub, Fraction(0)))
        if r > best:
            best = r
    return max(best, Fraction(0))


def gamma_oracle_2d(
    spec_a: LevelIndexSpec,
    spec_b: LevelIndexSpec,
    depth_a: int,
    depth_b: int,
    x: Fraction,
    y: Fraction,
    h: Fraction,
    step: Fraction,
    chunk: int = 512,
) -> Fraction:
    """Brute-force 2D grid search for the largest max-metric square avoiding
    the product of the two truncations inside the window around (x, y)."""
    x, y, h, step = Fraction(x), Fraction(y), Fraction(h), Fraction(step)
    if step <= 0:
        raise ValueError("step must be positive")
    if h <= 0:
        raise ValueError("radius h must be positive")
    sub = step / 3
    scale = _common_scale(x, y, h, sub)
    x_s, y_s = int(x * scale), int(y * scale)
    h_s, step_s, sub_s = int(h * scale), int(step * scale), int(sub * scale)
    max_depth = max(depth_a, depth_b)
    if step_s == 0 or not _int64_ok(scale, max_depth, max(abs(x_s), abs(y_s)), h_s):
        raise ValueError("oracle parameters too fine for the 2D integer grid")
    caps_a, dist_a = _axis_arrays(spec_a, depth_a, x_s, h_s, step_s, sub_s, scale)
    caps_b, dist_b = _axis_arrays(spec_b, depth_b, y_s, h_s, step_s, sub_s, scale)
    best = 0
    for i in range(0, len(caps_a), chunk):
        ca = caps_a[i : i + chunk, None]
        da = dist_a[i : i + chunk, None]
        cap2 = np.minimum(ca, caps_b[None, :])
        empt2 = np.maximum(da, dist_b[None, :])
        val = int(np.minimum(cap2, empt2).max(initial=0))
        if val > best:
            best = val
    return Fraction(max(best, 0), scale)


# ---------------------------------------------------------------------------
# Random instance generation
# ---------------------------------------------------------------------------


def _random_explicit(rng: random.Random, max_level: int = 6) -> Explicit:
    k = rng.randint(1, max_level)
    return Explicit(frozenset(rng.sample(range(1, max_level + 1), k)))


def _component_endpoints(trunc: TernaryDepthSet) -> list[Fraction]:
    """Endpoints of the closed components: 0, 1, and all gap endpoints.

    These are the adversarial points for gap geometry, and each of them
    belongs to the untruncated set as well (deeper levels never swallow
    gap endpoints of coarser levels).
    """
    if trunc.materialized is None:
        raise ValueError("endpoint sampling needs a materialized truncation")
    pts = {Fraction(0), Fraction(1)}
    for g in trunc.materialized:
        pts.add(g.lo)
        pts.add(g.hi)
    return sorted(pts)


_RADIUS_FACTORS = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1))


def _random_radius(rng: random.Random, m_lo: int, m_hi: int) -> Fraction:
    m = rng.randint(m_lo, m_hi)
    return 4 * rng.choice(_RADIUS_FACTORS) / 3**m


# ---------------------------------------------------------------------------
# Product-bound sampling (shared by the diagonal suite and acceptance runs)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ProductSample:
    x: Fraction
    y: Fraction
    h: Fraction
    delta_a: Fraction
    delta_b: Fraction
    delta_prod: Fraction


def product_bound_grid(windows: int = 10, per_window: int = 6) -> list[Fraction]:
    """Rational grid of windows*per_window radii spanning (4/3^(windows+1), 4/3].

    Per ternary decade [4/3^(n+1), 4/3^n], per_window equally spaced points
    excluding the lower endpoint (it reappears as the top of the next
    decade), so the whole grid is strictly decreasing.
    """
    grid: list[Fraction] = []
    for n in range(1, windows + 1):
        lo = Fraction(4, 3 ** (n + 1))
        hi = Fraction(4, 3**n)
        stepw = (hi - lo) / per_window
        for j in range(per_window, 0, -1):
            grid.append(lo + j * stepw)
    return grid


@lru_cache(maxsize=4)
def product_bound_samples(
    seed: int = 0, pairs: int = 20, depth: int = 11
) -> tuple[ProductSample, ...]:
    """Exact delta samples for pairs of points from the two interleaved sets
    over the decade grid; cached because several checks share them."""
    rng = random.Random(seed)
    trunc_i = build_truncation(PaperBlocks(), depth)
    trunc_j = build_truncation(ComplementBlocks(), depth)
    xs = rng.sample(_component_endpoints(trunc_i), pairs)
    ys = rng.sample(_component_endpoints(trunc_j), pairs)
    set_i = lazy_truncation(PaperBlocks(), depth)
    set_j = lazy_truncation(ComplementBlocks(), depth)
    grid = product_bound_grid(windows=depth - 1)
    out: list[ProductSample] = []
    for x, y in zip(xs, ys):
        for h in grid:
            da = delta(set_i, x, h)
            db = delta(set_j, y, h)
            out.append(ProductSample(x, y, h, da, db, delta_product(da, db)))
    return tuple(out)


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------


def _middle_thirds_gaps(depth: int) -> list[tuple[Fraction, Fraction]]:
    """Classical middle-thirds recursion, coded independently of the
    level-gap formula: repeatedly split every surviving closed interval."""
    intervals = [(Fraction(0), Fraction(1))]
    gaps: list[tuple[Fraction, Fraction]] = []
    for _ in range(depth):
        nxt = []
        for a, b in intervals:
            third = (b - a) / 3
            gaps.append((a + third, b - third))
            nxt.append((a, a + third))
            nxt.append((b - third, b))
        intervals = nxt
    return sorted(gaps)


def _suite_observation(seed: int, config: OracleConfig) -> tuple[int, list[Failure]]:
    max_level = 8
    inst = 0
    failures: list[Failure] = []
    pts = {
        n: boundary_points_in_window(n, Fraction(0), Fraction(1))
        for n in range(1, max_level + 1)
    }
    for n in range(1, max_level + 1):
        inst += 1
        if not epsilon_net_check(pts[n], Fraction(1, 3**n), Fraction(0), Fraction(1)):
            failures.append(
                Failure(f"net level={n}", f"3^-{n}-net in [0,1]", "coverage gap")
            )
    psets = {n: set(p) for n, p in pts.items()}
    for m in range(1, max_level + 1):
        for n in range(m + 1, max_level + 1):
            inst += 1
            common = psets[m] & psets[n]
            if common:
                failures.append(
                    Failure(
                        f"disjoint m={m} n={n}",
                        "empty intersection",
                        rat_str(min(common)),
                    )
                )
    for m in range(1, max_level + 1):
        for n in range(1, max_level + 1):
            if m == n:
                continue
            inst += 1
            hit = any(_inside_level_gap(p, m) for p in pts[n])
            if hit != (m < n):
                failures.append(
                    Failure(
                        f"boundary-in-gap m={m} n={n}",
                        str(m < n),
                        str(hit),
                    )
                )
    for depth in range(1, max_level + 1):
        inst += 1
        trunc = build_truncation(AllLevels(), depth)
        assert trunc.materialized is not None
        actual = [(g.lo, g.hi) for g in trunc.materialized]
        expected = _middle_thirds_gaps(depth)
        if actual != expected:
            failures.append(
                Failure(
                    f"cantor depth={depth}",
                    f"{len(expected)} recursion gaps",
                    f"{len(actual)} level-union gaps",
                )
            )
    return inst, failures


def _suite_density(seed: int, config: OracleConfig) -> tuple[int, list[Failure]]:
    depth = 10
    spec_j = ComplementBlocks()
    trunc = build_truncation(spec_j, depth)
    endpoints = _component_endpoints(trunc)
    inst = 0
    failures: list[Failure] = []
    for n0 in PaperBlocks().levels_upto(depth):
        tol = Fraction(2, 3**n0)
        for y in endpoints:
            inst += 1
            cands = boundary_points_in_window(n0, y - tol, y + tol)
            if not any(member(spec_j, depth, z) for z in cands):
                failures.append(
                    Failure(
                        f"density n0={n0} y={rat_str(y)}",
                        f"surviving level-{n0} endpoint within {rat_str(tol)}",
                        "none",
                    )
                )
    return inst, failures


def _suite_quarter(seed: int, config: OracleConfig) -> tuple[int, list[Failure]]:
    depth = 10
    n_points = 50
    samples = 25
    rng = random.Random(seed)
    inst = 0
    failures: list[Failure] = []
    for spec in (PaperBlocks(), ComplementBlocks()):
        trunc = build_truncation(spec, depth)
        endpoints = _component_endpoints(trunc)
        picks = rng.sample(endpoints, min(n_points, len(endpoints)))
        for n in spec.levels_upto(depth):
            for x in picks:
                inst += 1
                if not quarter_bound_check(spec, depth, x, n, samples):
                    failures.append(
                        Failure(
                            f"quarter set={spec} n={n} x={rat_str(x)}",
                            ">= 1/4 on the level window",
                            "below 1/4",
                        )
                    )
    return inst, failures


def _suite_product(seed: int, config: OracleConfig) -> tuple[int, list[Failure]]:
    rng = random.Random(seed)
    tol = 2 * config.grid_step
    inst = 0
    failures: list[Failure] = []
    for _ in range(20):
        spec_a = _random_explicit(rng)
        spec_b = _random_explicit(rng)
        trunc_a = build_truncation(spec_a, config.depth)
        trunc_b = build_truncation(spec_b, config.depth)
        x = rng.choice(_component_endpoints(trunc_a))
        y = rng.choice(_component_endpoints(trunc_b))
        h = _random_radius(rng, 3, 6)
        exact = max(
            gamma(lazy_truncation(spec_a, config.depth), x, h).value,
            gamma(lazy_truncation(spec_b, config.depth), y, h).value,
        )
        approx = gamma_oracle_2d(
            spec_a, spec_b, config.depth, config.depth, x, y, h, config.grid_step
        )
        inst += 1
        if not (approx <= exact and exact - approx <= tol):
            failures.append(
                Failure(
                    f"product A={spec_a} B={spec_b} x={rat_str(x)} "
                    f"y={rat_str(y)} h={rat_str(h)}",
                    f"within {rat_str(tol)} below {rat_str(exact)}",
                    rat_str(approx),
                )
            )
    return inst, failures


def _suite_oracle1d(seed: int, config: OracleConfig) -> tuple[int, list[Failure]]:
    rng = random.Random(seed)
    tol = 2 * config.grid_step
    inst = 0
    failures: list[Failure] = []
    for _ in range(100):
        spec = _random_explicit(rng)
        trunc = build_truncation(spec, config.depth)
        x = rng.choice(_component_endpoints(trunc))
        h = _random_radius(rng, 1, 6)
        exact = gamma(lazy_truncation(spec, config.depth), x, h).value
        approx = gamma_oracle_1d(spec, config.depth, x, h, config.grid_step)
        inst += 1
        if not (approx <= exact and exact - approx <= tol):
            failures.append(
                Failure(
                    f"oracle1d set={spec} x={rat_str(x)} h={rat_str(h)}",
                    f"within {rat_str(tol)} below {rat_str(exact)}",
                    rat_str(approx),
                )
            )
    return inst, failures


_THEOREM_CASES: tuple[tuple[Fraction, int, int], ...] = (
    (Fraction(1, 3), 1, 2),
    (Fraction(1, 3), 1, 3),
    (Fraction(1, 3), 1, 4),
    (Fraction(2, 3), 1, 2),
    (Fraction(2, 3), 1, 3),
    (Fraction(2, 3), 1, 4),
    (Fraction(1, 81), 4, 3),
    (Fraction(1, 81), 4, 4),
)


def _suite_theorem(seed: int, config: OracleConfig) -> tuple[int, list[Failure]]:
    inst = 0
    failures: list[Failure] = []
    for x, n0, i in _THEOREM_CASES:
        inst += 1
        res = theorem_scale_equality(x, n0, i)
        if not res.equal:
            failures.append(
                Failure(
                    f"theorem x={rat_str(x)} i={i}",
                    rat_str(res.expected),
                    rat_str(res.delta),
                )
            )
    return inst, failures


def _suite_stabilization(seed: int, config: OracleConfig) -> tuple[int, list[Failure]]:
    rng = random.Random(seed)
    cap = 12
    inst = 0
    failures: list[Failure] = []
    variants: list[Callable[[], LevelIndexSpec]] = [
        lambda: _random_explicit(rng),
        PaperBlocks,
        ComplementBlocks,
        AllLevels,
    ]
    for _ in range(100):
        spec = rng.choice(variants)()
        trunc = build_truncation(spec, 6)
        x = rng.choice(_component_endpoints(trunc))
        h = _random_radius(rng, 1, 7)
        inst += 1
        g = gamma(lazy_truncation(spec, cap), x, h)
        if g.value < Fraction(1, 3 ** (g.depth_used + 1)):
            continue  # criterion never held within the cap; nothing to certify
        for extra in (1, 2, 3):
            deeper = gamma_at_depth(spec, x, h, g.depth_used + extra)
            if deeper.value != g.value:
                failures.append(
                    Failure(
                        f"stabilization set={spec} x={rat_str(x)} "
                        f"h={rat_str(h)} depth={g.depth_used}+{extra}",
                        rat_str(g.value),
                        rat_str(deeper.value),
                    )
                )
    return inst, failures


def _suite_diagonal(seed: int, config: OracleConfig) -> tuple[int, list[Failure]]:
    inst = 0
    failures: list[Failure] = []
    for s in product_bound_samples(seed):
        for d in (s.delta_a, s.delta_b):
            inst += 1
            if delta_product(d, d) != d:
                failures.append(
                    Failure(
                        f"diagonal h={rat_str(s.h)}",
                        rat_str(d),
                        rat_str(delta_product(d, d)),
                    )
                )
    return inst, failures


_SUITES = {
    "observation": _suite_observation,
    "density": _suite_density,
    "quarter": _suite_quarter,
    "product": _suite_product,
    "theorem": _suite_theorem,
    "stabilization": _suite_stabilization,
    "diagonal": _suite_diagonal,
    "oracle1d": _suite_oracle1d,
}

SUITE_NAMES = tuple(_SUITES)


def run_suite(
    name: str, config: Optional[OracleConfig] = None, seed: int = 0
) -> SuiteReport:
    """Run one named verification battery; deterministic given (name, seed)."""
    if name not in _SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {SUITE_NAMES}")
    cfg = config if config is not None else OracleConfig()
    inst, failures = _SUITES[name](seed, cfg)
    return SuiteReport(
        suite=name, seed=seed, instances_run=inst, failures=tuple(failures)
    )
