"""Concrete strategy oracles and the counterplay harness.

Reference opponents (midpoint both sides, an adversarially tight
squeezer, and a seeded deterministic randomizer) exercise the engine;
two purposeful strategies realize the classifier's certificates in
play:

* ``countable_killer_b``: against a countable target presented as an
  enumeration, processes one enumerated point per round, playing it as
  the reply whenever it lies in the current legal interval and a
  midpoint otherwise.  Either way the point ends up outside the open
  bracket forever after, so after N rounds none of the first N
  enumerated values can be the play's limit.

* ``tree_chaser_a``: against a target containing a left-anchored tree,
  plays only anchored left endpoints of the tree, extending its current
  prefix by enough 0s that the next 1-sibling interval fits strictly
  inside the current bracket.  Every move is a certified member of the
  target and the moves increase strictly, so the limit stays in the
  (closed) target set.

``counterplay`` demonstrates why "the complement is dense and contains
a perfect set" is not enough for the avoiding side to win: aimed at a
point s, the schedule a_(n+1) = (a_n + s)/2 creeps up on s; whenever
the responder's reply drops below the current aim, the harness records
a restart, rebases the responder onto the sub-game starting at the last
committed round, asks a caller-supplied sampler for a fresh aim inside
the surviving bracket, and continues.  Dodged replies are still the
responder's own moves, so the full committed play remains exactly
consistent with the original oracle.  (The fresh-aim step is where a
non-constructive choice would live; the sampler makes the mechanism
executable while everything checkable stays checked.)
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .engine import (
    FirstDivergence,
    GameConfig,
    History,
    Side,
    StrategyOracle,
    apply_move,
    check_consistency,
)
from .rationals import Rat, format_rat
from .trees import CantorTree, Code, NotAnchoredError, anchored_value

_LCG_MUL = 6364136223846793005
_LCG_INC = 1442695040888963407
_MASK = (1 << 64) - 1
_MIX_A = 0x9E3779B97F4A7C15
_MIX_B = 0xBF58476D1CE4E5B9
_MEDIANT_STEPS = 12


class PrologueViolationError(ValueError):
    """Chaser target's level-1 intervals must sit strictly inside (a0, b0)."""


class SamplerOutOfRangeError(ValueError):
    """Counterplay sampler returned a point outside its interval."""


def _lcg(state: int) -> int:
    return (_LCG_MUL * state + _LCG_INC) & _MASK


def _absorb(state: int, value: Rat) -> int:
    state = _lcg(state ^ ((value.numerator * _MIX_A) & _MASK))
    return _lcg(state ^ ((value.denominator * _MIX_B) & _MASK))


def _seeded_value(seed: int, history: History, lo: Rat, hi: Rat) -> Rat:
    """Deterministic rational strictly inside (lo, hi): a mediant walk
    steered by LCG bits, the stream keyed by seed and the full history."""
    state = _lcg(seed & _MASK)
    state = _absorb(state, history.config.a0)
    state = _absorb(state, history.config.b0)
    for a, b in history.rounds:
        state = _absorb(state, a)
        state = _absorb(state, b)
    if history.pending_a is not None:
        state = _absorb(state, history.pending_a)
    ln, ld = lo.numerator, lo.denominator
    rn, rd = hi.numerator, hi.denominator
    for _ in range(_MEDIANT_STEPS):
        state = _lcg(state)
        mn, md = ln + rn, ld + rd
        if state >> 63:
            ln, ld = mn, md
        else:
            rn, rd = mn, md
    return Fraction(ln + rn, ld + rd)


def make_reference_oracle(kind: str, seed: int | None = None) -> StrategyOracle:
    """Built-in opponents: midpoint_A, midpoint_B, squeeze_B, or the
    seeded randomizers random_A / random_B (which require a seed)."""
    if kind == "midpoint_A":

        def move_a(h: History) -> Rat:
            lo, hi = h.legal_bounds()
            return (lo + hi) / 2

        return StrategyOracle("A", "midpoint_A", move_a)
    if kind == "midpoint_B":

        def move_b(h: History) -> Rat:
            lo, hi = h.legal_bounds()
            return (lo + hi) / 2

        return StrategyOracle("B", "midpoint_B", move_b)
    if kind == "squeeze_B":

        def move_sq(h: History) -> Rat:
            n = len(h.rounds) + 1
            lo, hi = h.legal_bounds()
            return lo + (hi - lo) / (1 << (2 * n))

        return StrategyOracle("B", "squeeze_B", move_sq)
    if kind in ("random_A", "random_B"):
        if seed is None:
            raise ValueError("seeded randomizer requires a seed")
        side: Side = "A" if kind == "random_A" else "B"

        def move_rnd(h: History) -> Rat:
            lo, hi = h.legal_bounds()
            return _seeded_value(seed, h, lo, hi)

        return StrategyOracle(side, f"seeded_random({side},{seed})", move_rnd)
    raise ValueError(f"unknown reference oracle kind: {kind!r}")


def countable_killer_b(enum) -> StrategyOracle:
    """B-side excluder for an enumerated target (``enum.at(k)`` values).

    At round n with A's move a on the table: play s_n = enum.at(n) when
    a < s_n < b_prev, else the midpoint.  Exclusion guarantee: after N
    rounds, enum.at(j) is outside the open bracket for every j <= N
    (played values become the bracket's top; skipped values were already
    at or outside the bounds, which only tighten).
    """

    def move(h: History) -> Rat:
        n = len(h.rounds) + 1
        lo, hi = h.legal_bounds()
        s_n = enum.at(n)
        if lo < s_n < hi:
            return s_n
        return (lo + hi) / 2

    descriptor = getattr(enum, "descriptor", "enum")
    return StrategyOracle("B", f"countable_killer({descriptor})", move)


def tree_chaser_a(target: CantorTree) -> StrategyOracle:
    """A-side strategy whose every move is a certified target member.

    Requires a left-anchored target tree.  First move: the anchored
    value of prefix "0".  After B replies leaving a bracket of width w,
    extend the current prefix p with enough 0s that the width bound at
    the extension depth drops below w, then append a 1; the anchored
    value of the new prefix lands strictly inside the bracket because
    the 0-descent keeps the left endpoint at the last move and the
    appended 1-sibling clears it by less than the width bound.

    The prefix chain is recomputed from the history alone, so the oracle
    stays a pure function of (descriptor, history).  On histories not
    produced by this rule the anchored move may be out of bounds; the
    oracle then falls back to the midpoint, keeping it total.
    """
    if not target.left_anchored:
        raise NotAnchoredError("chaser target must be left-anchored")

    def first_move_ok(config: GameConfig) -> None:
        lo0 = target.interval("0")[0]
        hi1 = target.interval("1")[1]
        if not (config.a0 < lo0 and hi1 < config.b0):
            raise PrologueViolationError(
                "target's level-1 intervals must lie strictly inside "
                f"({format_rat(config.a0)}, {format_rat(config.b0)})"
            )

    def next_prefix(prefix: str, gap: Rat) -> str:
        j = 0
        while not target.e_bound(len(prefix) + j) < gap:
            j += 1
        return prefix + "0" * j + "1"

    def move(h: History) -> Rat:
        first_move_ok(h.config)
        if not h.rounds:
            return anchored_value(Code.zeros(target, "0"))
        prefix = "0"
        for a, b in h.rounds:
            prefix = next_prefix(prefix, b - a)
        value = anchored_value(Code.zeros(target, prefix))
        lo, hi = h.legal_bounds()
        if not lo < value < hi:
            return (lo + hi) / 2
        return value

    return StrategyOracle("A", f"tree_chaser({target.descriptor})", move)


def chaser_prefix_after(target: CantorTree, history: History) -> str:
    """The chaser's prefix after the given self-played rounds (for audits)."""
    prefix = "0"
    for a, b in history.rounds:
        j = 0
        while not target.e_bound(len(prefix) + j) < b - a:
            j += 1
        prefix = prefix + "0" * j + "1"
    return prefix


def target_dodger_b(s: Rat) -> StrategyOracle:
    """Adversarial responder that ducks under ``s`` whenever legal:
    plays (a + s)/2 when that is a legal reply, else the midpoint."""

    def move(h: History) -> Rat:
        lo, hi = h.legal_bounds()
        candidate = (lo + s) / 2
        if lo < candidate < hi:
            return candidate
        return (lo + hi) / 2

    return StrategyOracle("B", f"dodger({format_rat(s)})", move)


def rebase_strategy_b(base: StrategyOracle, committed: History) -> StrategyOracle:
    """The sub-game strategy: ``base`` with ``committed`` prefixed.

    The rebased oracle answers sub-histories on the interval left after
    the committed rounds by translating them onto the original game:
    a sub-play consistent with the rebased oracle concatenates to a full
    play consistent with ``base``.  Rebasing on an empty history is the
    identity; nested rebases concatenate.
    """
    if base.side != "B":
        raise ValueError("rebase is defined for B-side oracles")
    if committed.pending_a is not None:
        raise ValueError("committed history must end after a B reply")
    sub_config = GameConfig(committed.prev_a, committed.prev_b)

    def move(h: History) -> Rat:
        if h.config != sub_config:
            raise ValueError(
                f"rebased oracle expects the sub-game on "
                f"[{format_rat(sub_config.a0)}, {format_rat(sub_config.b0)}]"
            )
        full = History(
            committed.config, committed.rounds + h.rounds, h.pending_a
        )
        return base.move(full)

    return StrategyOracle(
        "B", f"rebase({base.descriptor},rounds={committed.depth})", move
    )


@dataclass(frozen=True)
class RestartEvent:
    """A dodge: at the committed ``round`` the reply fell below the aim;
    the sub-game restarts on ``interval`` aiming at ``new_target``."""

    round: int
    interval: tuple[Rat, Rat]
    new_target: Rat


@dataclass(frozen=True)
class CounterplayTrace:
    committed: History
    restarts: tuple[RestartEvent, ...]
    divergence: FirstDivergence | None

    @property
    def consistent(self) -> bool:
        return self.divergence is None


def counterplay(
    oracle: StrategyOracle,
    s: Rat,
    sampler,
    depth: int,
    config: GameConfig | None = None,
) -> CounterplayTrace:
    """Chase target ``s`` against a B-side oracle for ``depth`` rounds.

    Schedule: each move halves the gap to the current aim (with a0 as
    the base this yields a_n = (1 - 1/2^n) * s while the aim is s).
    A reply below the aim is committed (it is the oracle's genuine
    move), recorded as a restart, and play continues toward a fresh aim
    from ``sampler((a_n, b_n))``, asked for a point of the surviving
    open bracket; the responder's view continues through the rebased
    oracle on the sub-game.  The committed play is verified against the
    ORIGINAL oracle at the end.
    """
    if config is None:
        config = GameConfig(Fraction(0), Fraction(1))
    if not config.a0 < s < config.b0:
        raise ValueError("target point must lie strictly inside (a0, b0)")
    if depth < 0:
        raise ValueError("depth must be >= 0")

    aim = s
    full = History(config)
    current = rebase_strategy_b(oracle, History(config))
    sub = History(config)
    restarts: list[RestartEvent] = []
    for n in range(1, depth + 1):
        a_next = (sub.prev_a + aim) / 2
        sub = apply_move(sub, "A", a_next)
        reply = current.move(sub)
        sub = apply_move(sub, "B", reply)
        full = apply_move(apply_move(full, "A", a_next), "B", reply)
        if reply < aim:
            fresh = sampler((a_next, reply))
            if not a_next < fresh < reply:
                raise SamplerOutOfRangeError(
                    f"sampler returned {format_rat(fresh)} outside "
                    f"({format_rat(a_next)}, {format_rat(reply)})"
                )
            restarts.append(RestartEvent(n, (a_next, reply), fresh))
            aim = fresh
            current = rebase_strategy_b(oracle, full)
            sub = History(GameConfig(a_next, reply))
    divergence = check_consistency(full, oracle, "B")
    return CounterplayTrace(full, tuple(restarts), divergence)


def midpoint_sampler(interval: tuple[Rat, Rat]) -> Rat:
    lo, hi = interval
    return (lo + hi) / 2


# ---------------------------------------------------------------------------
# Descriptor registry: short user-facing specs and canonical descriptors.


class UnknownOracleError(ValueError):
    """Strategy spec does not resolve to a known oracle."""


def default_chaser_tree(config: GameConfig) -> CantorTree:
    """Middle-thirds target on the middle three quarters of the interval,
    so its level-1 pieces sit strictly inside (a0, b0)."""
    from .trees import middle_thirds

    w = config.b0 - config.a0
    return middle_thirds(config.a0 + w / 8, config.b0 - w / 8)


_SEEDED_RE = re.compile(r"seeded_random\((A|B),(-?\d+)\)")
_KILLER_RE = re.compile(r"countable_killer\(stern-brocot\[([^,\]]+),([^,\]]+)\]\)")
_CHASER_RE = re.compile(r"tree_chaser\(middle-thirds\[([^,\]]+),([^,\]]+)\]\)")
_DODGER_RE = re.compile(r"dodger\(([^)]+)\)")


def oracle_from_descriptor(descriptor: str) -> StrategyOracle | None:
    """Rebuild a built-in oracle from its canonical descriptor string."""
    from .rationals import RatEnumeration, parse_rat
    from .trees import middle_thirds

    if descriptor in ("midpoint_A", "midpoint_B", "squeeze_B"):
        return make_reference_oracle(descriptor)
    m = _SEEDED_RE.fullmatch(descriptor)
    if m:
        return make_reference_oracle(f"random_{m.group(1)}", int(m.group(2)))
    m = _KILLER_RE.fullmatch(descriptor)
    if m:
        return countable_killer_b(
            RatEnumeration(parse_rat(m.group(1)), parse_rat(m.group(2)))
        )
    m = _CHASER_RE.fullmatch(descriptor)
    if m:
        return tree_chaser_a(middle_thirds(parse_rat(m.group(1)), parse_rat(m.group(2))))
    m = _DODGER_RE.fullmatch(descriptor)
    if m:
        return target_dodger_b(parse_rat(m.group(1)))
    return None


def resolve_oracle(side: Side, spec: str, config: GameConfig) -> StrategyOracle:
    """Resolve a short spec ("midpoint", "squeeze", "random:SEED",
    "killer", "chaser", "dodger:p/q") or a canonical descriptor for the
    given side and game interval."""
    from .rationals import RatEnumeration, parse_rat

    if spec == "midpoint":
        return make_reference_oracle(f"midpoint_{side}")
    if spec == "squeeze" and side == "B":
        return make_reference_oracle("squeeze_B")
    if spec.startswith("random:"):
        return make_reference_oracle(f"random_{side}", int(spec.split(":", 1)[1]))
    if spec == "killer" and side == "B":
        return countable_killer_b(RatEnumeration(config.a0, config.b0))
    if spec == "chaser" and side == "A":
        return tree_chaser_a(default_chaser_tree(config))
    if spec.startswith("dodger:") and side == "B":
        return target_dodger_b(parse_rat(spec.split(":", 1)[1]))
    oracle = oracle_from_descriptor(spec)
    if oracle is not None and oracle.side == side:
        return oracle
    raise UnknownOracleError(f"no {side}-side oracle for spec {spec!r}")
