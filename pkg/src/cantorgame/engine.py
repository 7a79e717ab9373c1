"""Game state machine: legality, plays, oracles, consistency, brackets.

A play on [a0, b0] alternates strictly increasing moves a1 < a2 < ...
by side A with strictly decreasing replies b1 > b2 > ... by side B,
where every round keeps a_n < b_n.  ``History`` is the finite prefix of
such a play (plus the pending A move between A's turn and B's reply);
its constructor re-validates the whole chain exactly, so an in-range
``History`` value is proof of legality.

A ``StrategyOracle`` is a deterministic total rule mapping each legal
history (for its side) to a legal next move.  ``check_consistency``
re-invokes an oracle on every prefix of a play and reports the first
divergence, if any.  ``limit_bracket`` returns the deepest (a_n, b_n)
pair: the exact open bracket that contains the limit of every infinite
continuation of the play, since the a_n increase toward it and stay
below every b_n.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Literal

from .rationals import Rat, format_rat

Side = Literal["A", "B"]


class InvalidConfigError(ValueError):
    """Game interval requires rational endpoints with a0 < b0."""


class WrongTurnError(RuntimeError):
    """Move submitted for the side that is not on turn."""


class NoRoundsError(ValueError):
    """Operation requires at least one complete round."""


class IllegalMoveError(ValueError):
    """A move violates its strict bounds; carries the exact bound."""

    def __init__(self, side: Side, value: Rat, lo: Rat, hi: Rat):
        name = "a" if side == "A" else "b"
        super().__init__(
            f"illegal {side} move {format_rat(value)}: requires "
            f"{format_rat(lo)} < {name} < {format_rat(hi)}"
        )
        self.side = side
        self.value = value
        self.lo = lo
        self.hi = hi


@dataclass(frozen=True)
class GameConfig:
    a0: Rat
    b0: Rat

    def __post_init__(self) -> None:
        if not self.a0 < self.b0:
            raise InvalidConfigError(
                f"need a0 < b0, got {format_rat(self.a0)} >= {format_rat(self.b0)}"
            )


@dataclass(frozen=True)
class History:
    """A legal finite play prefix; construction re-validates the chain."""

    config: GameConfig
    rounds: tuple[tuple[Rat, Rat], ...] = ()
    pending_a: Rat | None = None

    def __post_init__(self) -> None:
        a_prev, b_prev = self.config.a0, self.config.b0
        for n, (a, b) in enumerate(self.rounds, start=1):
            if not a_prev < a < b_prev:
                raise IllegalMoveError("A", a, a_prev, b_prev)
            if not a < b < b_prev:
                raise IllegalMoveError("B", b, a, b_prev)
            a_prev, b_prev = a, b
        if self.pending_a is not None and not a_prev < self.pending_a < b_prev:
            raise IllegalMoveError("A", self.pending_a, a_prev, b_prev)

    @property
    def depth(self) -> int:
        """Number of complete rounds."""
        return len(self.rounds)

    @property
    def turn(self) -> Side:
        return "A" if self.pending_a is None else "B"

    @property
    def prev_a(self) -> Rat:
        """Lower bound of the current bracket (last A move, or a0)."""
        return self.rounds[-1][0] if self.rounds else self.config.a0

    @property
    def prev_b(self) -> Rat:
        """Upper bound of the current bracket (last B move, or b0)."""
        return self.rounds[-1][1] if self.rounds else self.config.b0

    def legal_bounds(self) -> tuple[Rat, Rat]:
        """Exact open interval the side on turn must move into."""
        if self.pending_a is None:
            return self.prev_a, self.prev_b
        return self.pending_a, self.prev_b


@dataclass(frozen=True)
class StrategyOracle:
    """Deterministic move rule for one side, total on legal histories.

    ``move`` must be a pure function of the history (seeded randomness
    included), so identical histories always yield identical moves; the
    descriptor is the oracle's stable identity (kind + parameters + seed).
    """

    side: Side
    descriptor: str
    move: Callable[[History], Rat]


@dataclass(frozen=True)
class LimitBracket:
    """Deepest exact bracket (a_n, b_n): the play's limit lies inside it."""

    lo: Rat
    hi: Rat
    depth: int


@dataclass(frozen=True)
class FirstDivergence:
    """First round where a play departs from an oracle's prescription."""

    round: int
    expected: Rat
    found: Rat


def apply_move(history: History, side: Side, value: Rat) -> History:
    """Append one move, enforcing turn order and strict bounds."""
    if history.turn != side:
        raise WrongTurnError(f"it is {history.turn}'s turn, not {side}'s")
    lo, hi = history.legal_bounds()
    if not lo < value < hi:
        raise IllegalMoveError(side, value, lo, hi)
    if side == "A":
        return History(history.config, history.rounds, value)
    return History(
        history.config, history.rounds + ((history.pending_a, value),), None
    )


def run(
    config: GameConfig,
    oracle_a: StrategyOracle,
    oracle_b: StrategyOracle,
    rounds: int,
) -> History:
    """Play ``rounds`` full rounds of oracle against oracle.

    Raises IllegalMoveError if either oracle violates its contract;
    the result is consistent with both oracles by construction.
    """
    if rounds < 0:
        raise ValueError("rounds must be >= 0")
    h = History(config)
    for _ in range(rounds):
        h = apply_move(h, "A", oracle_a.move(h))
        h = apply_move(h, "B", oracle_b.move(h))
    return h


def check_consistency(
    history: History, oracle: StrategyOracle, side: Side
) -> FirstDivergence | None:
    """Re-invoke the oracle on every prefix; None means consistent."""
    for i, (a, b) in enumerate(history.rounds):
        prefix = History(history.config, history.rounds[:i])
        if side == "A":
            expected = oracle.move(prefix)
            if expected != a:
                return FirstDivergence(i + 1, expected, a)
        else:
            expected = oracle.move(History(history.config, history.rounds[:i], a))
            if expected != b:
                return FirstDivergence(i + 1, expected, b)
    if side == "A" and history.pending_a is not None:
        prefix = History(history.config, history.rounds)
        expected = oracle.move(prefix)
        if expected != history.pending_a:
            return FirstDivergence(len(history.rounds) + 1, expected, history.pending_a)
    return None


def limit_bracket(history: History) -> LimitBracket:
    """The deepest round's exact bracket; requires >= 1 complete round."""
    if not history.rounds:
        raise NoRoundsError("limit bracket requires at least one complete round")
    a, b = history.rounds[-1]
    return LimitBracket(a, b, len(history.rounds))
