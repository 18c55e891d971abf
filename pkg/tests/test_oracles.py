import inspect
from fractions import Fraction as F

import pytest

from ternary_porosity import (
    AllLevels,
    Explicit,
    OracleConfig,
    gamma,
    gamma_oracle_1d,
    gamma_oracle_2d,
    lazy_truncation,
    product_bound_grid,
    report_to_json,
    run_suite,
)
from ternary_porosity import oracles
from ternary_porosity.oracles import _gamma_oracle_1d_slow

E1 = Explicit(frozenset({1}))


# ---------------------------------------------------------------------------
# 1D oracle
# ---------------------------------------------------------------------------


def test_oracle_1d_level_one():
    approx = gamma_oracle_1d(E1, 1, F(0), F(1, 2), F(1, 100))
    assert abs(approx - F(1, 4)) <= F(2, 100)
    assert approx <= F(1, 4)


def test_oracle_1d_solid_set():
    assert gamma_oracle_1d(E1, 0, F(1, 2), F(1, 4), F(1, 50)) == 0


def test_oracle_1d_vs_exact_cantor():
    step = F(1, 3**7)
    exact = gamma(lazy_truncation(AllLevels(), 4), F(0), F(1, 3)).value
    approx = gamma_oracle_1d(AllLevels(), 4, F(0), F(1, 3), step)
    assert approx <= exact
    assert exact - approx <= 2 * step


def test_oracle_1d_slow_path_agrees_with_fast():
    for x, h, step in [
        (F(1, 3), F(1, 9), F(1, 27)),
        (F(0), F(1, 2), F(1, 30)),
    ]:
        fast = gamma_oracle_1d(E1, 1, x, h, step)
        slow = _gamma_oracle_1d_slow(E1, 1, x, h, step)
        assert fast == slow


def test_oracle_1d_rejects_bad_params():
    with pytest.raises(ValueError):
        gamma_oracle_1d(E1, 1, F(0), F(1, 2), F(0))
    with pytest.raises(ValueError):
        gamma_oracle_1d(E1, 1, F(0), F(0), F(1, 10))


# ---------------------------------------------------------------------------
# 2D oracle
# ---------------------------------------------------------------------------


def test_oracle_2d_product_of_gap_and_solid():
    # factor values: gamma = 1/4 for each factor at (0, 1/2); the max rule
    # gives 1/4 for the product as well
    step = F(1, 3**6)
    approx = gamma_oracle_2d(E1, E1, 1, 0, F(0), F(0), F(1, 2), step)
    assert approx <= F(1, 4)
    assert F(1, 4) - approx <= 2 * step


def test_oracle_2d_interior_of_solid_square():
    assert gamma_oracle_2d(E1, E1, 0, 0, F(1, 2), F(1, 2), F(1, 4), F(1, 27)) == 0


def test_oracle_2d_matches_max_rule():
    step = F(1, 3**6)
    spec_a = Explicit(frozenset({1, 2}))
    spec_b = Explicit(frozenset({3}))
    x, y, h = F(2, 9), F(1, 3), F(4, 27)
    exact = max(
        gamma(lazy_truncation(spec_a, 4), x, h).value,
        gamma(lazy_truncation(spec_b, 4), y, h).value,
    )
    approx = gamma_oracle_2d(spec_a, spec_b, 4, 4, x, y, h, step)
    assert approx <= exact
    assert exact - approx <= 2 * step


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------


def test_run_suite_rejects_unknown_name():
    with pytest.raises(ValueError):
        run_suite("bogus")


def test_suite_reports_are_deterministic():
    a = report_to_json(run_suite("theorem", seed=3))
    b = report_to_json(run_suite("theorem", seed=3))
    assert a == b
    c = report_to_json(run_suite("stabilization", seed=5))
    d = report_to_json(run_suite("stabilization", seed=5))
    assert c == d


def test_suite_report_json_shape():
    report = run_suite("observation")
    text = report_to_json(report)
    assert '"suite": "observation"' in text
    assert '"failures": []' in text
    assert report.passed


def test_oracle_module_never_touches_the_exact_gap_machinery():
    src = inspect.getsource(oracles)
    assert "window_components" not in src
    assert "normalize" not in src


def test_product_bound_grid_spans_the_decades():
    grid = product_bound_grid(windows=10, per_window=6)
    assert len(grid) == 60
    assert grid[0] == F(4, 3)
    assert all(a > b for a, b in zip(grid, grid[1:]))
    assert grid[-1] > F(4, 3**11)
    assert grid[-1] <= F(4, 3**10)


def test_oracle_config_validation():
    with pytest.raises(ValueError):
        OracleConfig(grid_step=F(0))
