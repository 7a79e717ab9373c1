"""Deterministic engine for the Cantor game on a rational interval.

Two players shrink a bracket: side A raises the floor, side B lowers
the ceiling, and the floor's limit decides the game against a target
set.  Everything here is exact rational arithmetic: plays, strategy
oracles, generalized Cantor set trees, extraction of such trees from
arbitrary strategies, and certificate-backed determinacy verdicts.
"""

from .engine import (
    FirstDivergence,
    GameConfig,
    History,
    IllegalMoveError,
    LimitBracket,
    StrategyOracle,
    apply_move,
    check_consistency,
    limit_bracket,
    run,
)
from .extraction import ExtractedTree, extract_from_a, extract_from_b
from .rationals import Rat, RatEnumeration, format_rat, parse_rat, rat_cmp
from .strategies import (
    counterplay,
    countable_killer_b,
    make_reference_oracle,
    midpoint_sampler,
    rebase_strategy_b,
    resolve_oracle,
    tree_chaser_a,
)
from .targets import (
    AWins,
    BWins,
    CantorTreeSet,
    ClosedInterval,
    CountableEnum,
    CoverComplement,
    FiniteUnion,
    Membership,
    Unknown,
    classify_determinacy,
    cond_point,
    condensation_partition_probe,
    density_probe,
    member,
    t15_probe,
)
from .trees import (
    CantorTree,
    Code,
    anchored_value,
    avoid_open_cover_tree,
    flip_witness,
    membership_probe,
    middle_thirds,
    point_bounds,
    validate_tree,
)

__all__ = [name for name in dir() if not name.startswith("_")]
