import random
from fractions import Fraction as F

import pytest

from ternary_porosity import (
    AllLevels,
    ComplementBlocks,
    Explicit,
    MaterializationCapError,
    PaperBlocks,
    boundary_points_in_window,
    build_truncation,
    dist_to_level_gaps,
    lazy_truncation,
    level_gaps,
    level_gaps_in_window,
    member,
    normalize,
    parse_set_spec,
    point_in_closed,
    spec_contains,
    truncation_gap_count,
)


def pairs(gaps):
    return [(g.lo, g.hi) for g in gaps]


# ---------------------------------------------------------------------------
# level gaps
# ---------------------------------------------------------------------------


def test_level_gaps_first_levels():
    assert pairs(level_gaps(1)) == [(F(1, 3), F(2, 3))]
    assert pairs(level_gaps(2)) == [
        (F(1, 9), F(2, 9)),
        (F(4, 9), F(5, 9)),
        (F(7, 9), F(8, 9)),
    ]
    assert pairs(level_gaps(0)) == []


def test_level_gaps_cap():
    with pytest.raises(MaterializationCapError):
        level_gaps(30)


def test_level_gaps_in_window_filters():
    assert pairs(level_gaps_in_window(2, F(2, 5), F(3, 5))) == [(F(4, 9), F(5, 9))]
    # adjacent level-8 gaps touch the window endpoints but do not enter it
    assert pairs(level_gaps_in_window(8, F(2186, 6561), F(2188, 6561))) == []
    assert pairs(level_gaps_in_window(5, F(2), F(3))) == []


@pytest.mark.parametrize("n", range(1, 8))
def test_level_gaps_in_window_agrees_with_filter(n):
    rng = random.Random(n)
    full = level_gaps(n)
    for _ in range(25):
        a = F(rng.randint(-10, 90), 81)
        b = a + F(rng.randint(1, 40), 81)
        lazy = pairs(level_gaps_in_window(n, a, b))
        filtered = [(g.lo, g.hi) for g in full if g.lo < b and g.hi > a]
        assert lazy == filtered


def test_boundary_points():
    assert boundary_points_in_window(1, F(0), F(1)) == [F(1, 3), F(2, 3)]
    assert boundary_points_in_window(2, F(0), F(1)) == [
        F(1, 9),
        F(2, 9),
        F(4, 9),
        F(5, 9),
        F(7, 9),
        F(8, 9),
    ]
    for n in range(1, 9):
        assert len(boundary_points_in_window(n, F(0), F(1))) == 2 * 3 ** (n - 1)


def test_level_gap_total_length_is_one_third():
    for n in range(1, 9):
        total = sum((g.hi - g.lo for g in level_gaps(n)), F(0))
        assert total == F(1, 3)


# ---------------------------------------------------------------------------
# index sets
# ---------------------------------------------------------------------------


def test_spec_contains_blocks():
    blocks = PaperBlocks()
    assert spec_contains(blocks, 4)
    assert not spec_contains(blocks, 12)
    assert spec_contains(ComplementBlocks(), 2)
    # first few block members: 1, 4, 5, 9, 10, 11, 16, ...
    members = [n for n in range(1, 21) if blocks.contains(n)]
    assert members == [1, 4, 5, 9, 10, 11, 16, 17, 18, 19]


def test_explicit_validation():
    with pytest.raises(ValueError):
        Explicit(frozenset())
    with pytest.raises(ValueError):
        Explicit(frozenset({0, 2}))


# ---------------------------------------------------------------------------
# truncations and membership
# ---------------------------------------------------------------------------


def test_build_truncation_single_level():
    t = build_truncation(Explicit(frozenset({1})), 3)
    assert pairs(t.materialized) == [(F(1, 3), F(2, 3))]


def test_build_truncation_all_levels_depth_two():
    t = build_truncation(AllLevels(), 2)
    assert pairs(t.materialized) == [
        (F(1, 9), F(2, 9)),
        (F(1, 3), F(2, 3)),
        (F(7, 9), F(8, 9)),
    ]


def test_build_truncation_skips_unselected_levels():
    t = build_truncation(Explicit(frozenset({2})), 5)
    assert pairs(t.materialized) == pairs(level_gaps(2))


def test_build_truncation_respects_cap():
    t = build_truncation(AllLevels(), 15, cap=100)
    assert t.materialized is None
    assert truncation_gap_count(AllLevels(), 15) > 100


def test_member_examples():
    assert member(PaperBlocks(), 12, F(1, 3))
    assert not member(ComplementBlocks(), 2, F(1, 2))
    assert not member(AllLevels(), 5, F(-1))


def test_member_agrees_with_materialized_membership():
    rng = random.Random(7)
    specs = [
        AllLevels(),
        PaperBlocks(),
        ComplementBlocks(),
        Explicit(frozenset({1, 3, 4})),
    ]
    for spec in specs:
        for depth in (1, 4, 7):
            t = build_truncation(spec, depth)
            probe = {F(0), F(1)}
            for g in t.materialized:
                probe.update((g.lo, g.hi, (g.lo + g.hi) / 2))
            probe.update(F(rng.randint(0, 729), 729) for _ in range(50))
            for x in probe:
                assert member(spec, depth, x) == point_in_closed(t.materialized, x)


def test_lazy_matches_materialized_restriction():
    rng = random.Random(11)
    specs = [AllLevels(), PaperBlocks(), ComplementBlocks(), Explicit(frozenset({2, 5}))]
    windows = 25
    for spec in specs:
        for depth in (3, 6, 10):
            t = build_truncation(spec, depth)
            for _ in range(windows):
                a = F(rng.randint(-200, 2100), 2187)
                b = a + F(rng.randint(1, 400), 2187)
                lazy = pairs(lazy_truncation(spec, depth).gaps_in_window(a, b))
                filtered = normalize(
                    [g for g in t.materialized if g.lo < b and g.hi > a]
                )
                assert lazy == pairs(filtered)


# ---------------------------------------------------------------------------
# distances
# ---------------------------------------------------------------------------


def test_dist_to_level_gaps_examples():
    assert dist_to_level_gaps(F(1, 3), 2) == F(1, 9)
    assert dist_to_level_gaps(F(1, 3), 6) == F(1, 729)
    assert dist_to_level_gaps(F(0), 1) == F(1, 3)


def test_dist_to_level_gaps_matches_enumeration():
    rng = random.Random(3)
    for n in (1, 2, 3, 4):
        gaps = level_gaps(n)
        for _ in range(40):
            x = F(rng.randint(-81, 162), 81)
            brute = min(
                max(g.lo - x, x - g.hi, F(0)) for g in gaps
            )
            assert dist_to_level_gaps(x, n) == brute


def test_boundary_points_never_in_deeper_gaps():
    # gap endpoints of level n survive every deeper level
    for n in range(1, 6):
        for p in boundary_points_in_window(n, F(0), F(1)):
            assert member(Explicit(frozenset(range(n + 1, 9))), 8, p)


# ---------------------------------------------------------------------------
# set-spec grammar
# ---------------------------------------------------------------------------


def test_parse_set_spec():
    e = parse_set_spec("blocks@depth:12")
    assert isinstance(e.spec, PaperBlocks) and e.depth == 12
    e = parse_set_spec("explicit:1,2,5")
    assert e.spec == Explicit(frozenset({1, 2, 5})) and e.depth == 10
    e = parse_set_spec("coblocks")
    assert isinstance(e.spec, ComplementBlocks)
    e = parse_set_spec("all@depth:3")
    assert isinstance(e.spec, AllLevels) and e.depth == 3


@pytest.mark.parametrize(
    "bad",
    ["coblocks@depth:0", "explicit:", "explicit:0,2", "blocks@depth:x", "bogus", ""],
)
def test_parse_set_spec_rejects(bad):
    with pytest.raises(ValueError):
        parse_set_spec(bad)


def test_set_spec_roundtrip():
    for text in ("blocks@depth:12", "explicit:1,2,5@depth:10", "all@depth:3"):
        e = parse_set_spec(text)
        again = parse_set_spec(str(e))
        assert again.spec == e.spec and again.depth == e.depth
