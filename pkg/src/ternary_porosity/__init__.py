"""Exact-arithmetic porosity computations on ternary gap sets.

Constructs the middle-third level-gap sets selected by a level index set,
computes the largest-empty-ball functional gamma and the porosity ratio
delta with exact rationals, and cross-checks everything against
independent brute-force grid oracles.
"""

from .intervals import (
    GapList,
    OpenInterval,
    WindowComponents,
    dist_to_closed,
    normalize,
    point_in_closed,
    window_components,
)
from .oracles import (
    OracleConfig,
    SuiteReport,
    SUITE_NAMES,
    gamma_oracle_1d,
    gamma_oracle_2d,
    product_bound_grid,
    product_bound_samples,
    report_to_json,
    run_suite,
)
from .porosity import (
    GammaResult,
    Profile,
    ProfileSample,
    ScaleWindow,
    TheoremScaleResult,
    delta,
    delta_product,
    epsilon_net_check,
    gamma,
    gamma_at_depth,
    profile_csv,
    quarter_bound_check,
    scale_profile,
    theorem_scale_equality,
)
from .rat import Rat, dec_str, parse_rat, rat_str
from .ternary import (
    AllLevels,
    ComplementBlocks,
    DEFAULT_GAP_CAP,
    Explicit,
    LevelIndexSpec,
    MaterializationCapError,
    PaperBlocks,
    SetSpecExpr,
    TernaryDepthSet,
    boundary_points_in_window,
    build_truncation,
    dist_to_level_gaps,
    lazy_truncation,
    level_gap_count,
    level_gaps,
    level_gaps_in_window,
    member,
    parse_set_spec,
    spec_contains,
    truncation_gap_count,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
