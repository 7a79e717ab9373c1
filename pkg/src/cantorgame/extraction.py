"""Build a generalized Cantor set inside any strategy's limit set.

Given ANY oracle for one side, the extraction runs the constructive
argument that its limit set contains a generalized Cantor set: every
node interval of the output tree has one endpoint produced by the
oracle itself (responding to a history the construction assembled) and
the other endpoint drawn from the fixed rational enumeration.

A-side, on [a0, b0] with oracle f and bounds e_n = (b0 - a0)/2^n:

    a1 = f(empty history); c = a1, d = b0, u = (c + d)/2, root I = [c, d]
    per node p (u_p its midpoint):
        d_(p1) = least-index enumeration element in (c_p, u_p)
        c_(p1) = f(history of p extended by B playing d_(p1))
        d_(p0) = least-index enumeration element in (c_p, c_(p1))
        c_(p0) = f(history of p extended by B playing d_(p0))
    giving c_p < c_(p0) < d_(p0) < c_(p1) < d_(p1) < u_p < d_p exactly.

B-side mirrors it upward from the midpoint with root [a0, b0]:

    c_(p0) = least-index element in (u_p, d_p);  d_(p0) = g(... A plays c_(p0))
    c_(p1) = least-index element in (d_(p0), d_p); d_(p1) = g(... A plays c_(p1))

so c_p < u_p < c_(p0) < d_(p0) < c_(p1) < d_(p1) < d_p exactly.

Every oracle response is validated against the strict move bounds at
the moment of the call; a violation aborts the extraction and reports
the offending history.  The per-node invocation histories are kept in a
ledger, so ``replay`` can reconstruct, for any code prefix, the exact
play that brackets the coded point and confirm it is consistent with
the original oracle: the coded points really are limits of consistent
plays.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .engine import (
    FirstDivergence,
    GameConfig,
    History,
    Side,
    StrategyOracle,
    check_consistency,
)
from .rationals import Rat, RatEnumeration, format_rat
from .trees import CantorTree, HalvingRule, Interval


class OracleContractViolationError(RuntimeError):
    """The oracle returned a value outside its strict legal bounds."""

    def __init__(self, history: History, value: Rat, lo: Rat, hi: Rat):
        side = history.turn
        name = "a" if side == "A" else "b"
        super().__init__(
            f"oracle for {side} returned {format_rat(value)} at depth "
            f"{history.depth}; needs {format_rat(lo)} < {name} < {format_rat(hi)}"
        )
        self.history = history
        self.value = value
        self.lo = lo
        self.hi = hi


class DepthExceededError(ValueError):
    """Requested path is deeper than the extraction was materialized."""


@dataclass
class ExtractedTree:
    """A materialized extraction: tree, per-node ledger, and audit data.

    ``nodes`` maps each path (including "") to its exact interval;
    ``ledgers`` maps each path to the exact History handed to the oracle
    when the node's strategy-derived endpoint was computed; ``midpoints``
    and ``enum_indices`` record the split points and the enumeration
    index consumed per node.
    """

    side: Side
    config: GameConfig
    oracle: StrategyOracle
    enum: RatEnumeration
    depth: int
    tree: CantorTree
    nodes: dict[str, Interval]
    midpoints: dict[str, Rat]
    ledgers: dict[str, History]
    enum_indices: dict[str, int]
    initial: dict[str, Rat]

    def replay(self, prefix: str) -> tuple[History, FirstDivergence | None]:
        """Reconstruct the play bracketing the coded point of ``prefix``.

        A-side plays are (a1, b1) = (c, d_(i1)) then a_n = c at the
        (n-1)-bit prefix and b_n = d at the n-bit prefix; B-side plays
        pair each prefix's own endpoints.  Returns the play plus the
        consistency verdict against the original oracle (None = consistent).
        """
        if prefix.strip("01"):
            raise ValueError("code prefix must be a 0/1 string")
        if len(prefix) > self.depth:
            raise DepthExceededError(
                f"prefix length {len(prefix)} exceeds extraction depth {self.depth}"
            )
        rounds = []
        for j in range(1, len(prefix) + 1):
            if self.side == "A":
                a = self.nodes[prefix[: j - 1]][0]
            else:
                a = self.nodes[prefix[:j]][0]
            b = self.nodes[prefix[:j]][1]
            rounds.append((a, b))
        history = History(self.config, tuple(rounds))
        return history, check_consistency(history, self.oracle, self.side)


def _checked_move(oracle: StrategyOracle, history: History) -> Rat:
    lo, hi = history.legal_bounds()
    value = oracle.move(history)
    if not lo < value < hi:
        raise OracleContractViolationError(history, value, lo, hi)
    return value


def _paths_by_level(depth: int):
    for n in range(depth):
        for idx in range(1 << n):
            yield format(idx, f"0{n}b") if n else ""


def extract_from_a(
    oracle: StrategyOracle,
    config: GameConfig,
    depth: int,
    enum: RatEnumeration | None = None,
    index_cap: int | None = None,
) -> ExtractedTree:
    """Extract a generalized Cantor set from an A-side oracle's limit set.

    Every node's LEFT endpoint is an oracle response recorded in the
    ledger; every RIGHT endpoint is a least-index enumeration element.
    The tree validates with bounds e_n = (b0 - a0)/2^n.
    """
    if oracle.side != "A":
        raise ValueError("extract_from_a requires an A-side oracle")
    return _extract(oracle, config, depth, enum, index_cap, side="A")


def extract_from_b(
    oracle: StrategyOracle,
    config: GameConfig,
    depth: int,
    enum: RatEnumeration | None = None,
    index_cap: int | None = None,
) -> ExtractedTree:
    """Mirror of ``extract_from_a`` for a B-side oracle.

    Every node's RIGHT endpoint is an oracle response; every LEFT
    endpoint is a least-index enumeration element.
    """
    if oracle.side != "B":
        raise ValueError("extract_from_b requires a B-side oracle")
    return _extract(oracle, config, depth, enum, index_cap, side="B")


def _extract(
    oracle: StrategyOracle,
    config: GameConfig,
    depth: int,
    enum: RatEnumeration | None,
    index_cap: int | None,
    side: Side,
) -> ExtractedTree:
    if depth < 1:
        raise ValueError("extraction depth must be >= 1")
    if enum is None:
        enum = RatEnumeration(config.a0, config.b0)
    if (enum.lo, enum.hi) != (config.a0, config.b0):
        raise ValueError("enumeration must span exactly [a0, b0]")

    nodes: dict[str, Interval] = {}
    midpoints: dict[str, Rat] = {}
    ledgers: dict[str, History] = {}
    enum_indices: dict[str, int] = {}

    if side == "A":
        empty = History(config)
        a1 = _checked_move(oracle, empty)
        c, d = a1, config.b0
        ledgers[""] = empty
        initial = {"a1": a1, "c": c, "d": d}
    else:
        c, d = config.a0, config.b0
        initial = {"c": c, "d": d}
    nodes[""] = (c, d)
    midpoints[""] = (c + d) / 2

    def history_rounds(path: str) -> tuple[tuple[Rat, Rat], ...]:
        if side == "A":
            return tuple(
                (nodes[path[: j - 1]][0], nodes[path[:j]][1])
                for j in range(1, len(path) + 1)
            )
        return tuple(
            (nodes[path[:j]][0], nodes[path[:j]][1]) for j in range(1, len(path) + 1)
        )

    for path in _paths_by_level(depth):
        c_p, d_p = nodes[path]
        u_p = midpoints[path]
        rounds = history_rounds(path)
        if side == "A":
            d1, i1 = enum.first_in(c_p, u_p, index_cap)
            h1 = History(config, rounds + ((c_p, d1),))
            c1 = _checked_move(oracle, h1)
            d0, i0 = enum.first_in(c_p, c1, index_cap)
            h0 = History(config, rounds + ((c_p, d0),))
            c0 = _checked_move(oracle, h0)
        else:
            c0, i0 = enum.first_in(u_p, d_p, index_cap)
            h0 = History(config, rounds, c0)
            d0 = _checked_move(oracle, h0)
            c1, i1 = enum.first_in(d0, d_p, index_cap)
            h1 = History(config, rounds, c1)
            d1 = _checked_move(oracle, h1)
        if side == "A":
            chain = (c_p, c0, d0, c1, d1, u_p, d_p)
        else:
            chain = (c_p, u_p, c0, d0, c1, d1, d_p)
        assert all(x < y for x, y in zip(chain, chain[1:])), (
            f"ordering chain broken at node {path!r}: "
            + " < ".join(format_rat(v) for v in chain)
        )
        for bit, interval, ledger, idx in (
            ("0", (c0, d0), h0, i0),
            ("1", (c1, d1), h1, i1),
        ):
            child = path + bit
            nodes[child] = interval
            midpoints[child] = (interval[0] + interval[1]) / 2
            ledgers[child] = ledger
            enum_indices[child] = idx

    tree = _materialized_tree(
        nodes,
        HalvingRule(config.b0 - config.a0),
        descriptor=f"extracted[{side}:{oracle.descriptor};depth={depth}]",
    )
    return ExtractedTree(
        side=side,
        config=config,
        oracle=oracle,
        enum=enum,
        depth=depth,
        tree=tree,
        nodes=nodes,
        midpoints=midpoints,
        ledgers=ledgers,
        enum_indices=enum_indices,
        initial=initial,
    )


def _materialized_tree(
    nodes: Mapping[str, Interval],
    e_rule: HalvingRule,
    descriptor: str,
    left_anchored: bool = False,
) -> CantorTree:
    """Wrap an explicit path->interval map as a CantorTree."""

    def gen(path: str, _parent: Interval) -> tuple[Interval, Interval]:
        try:
            return nodes[path + "0"], nodes[path + "1"]
        except KeyError:
            raise DepthExceededError(
                f"tree is materialized only to depth; missing node under {path!r}"
            ) from None

    return CantorTree(
        nodes[""], e_rule, gen, left_anchored=left_anchored, descriptor=descriptor
    )
