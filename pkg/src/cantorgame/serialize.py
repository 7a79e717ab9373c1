"""Wire and file formats.  Every number crossing a boundary is an exact
``num/den`` string; dumps are canonical (sorted keys, fixed separators)
so identical inputs always produce byte-identical artifacts."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .engine import GameConfig, History
from .extraction import ExtractedTree, _materialized_tree
from .rationals import RatEnumeration, format_rat, parse_rat
from .strategies import CounterplayTrace, RestartEvent
from .targets import (
    CantorTreeSet,
    ClosedInterval,
    CountableEnum,
    CoverComplement,
    FiniteUnion,
    SetExpr,
)
from .trees import CantorTree, HalvingRule, Interval, middle_thirds


def canonical_json(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ": "), indent=1) + "\n"


def _rat_pair(pair: Interval) -> list[str]:
    return [format_rat(pair[0]), format_rat(pair[1])]


def _parse_pair(pair: list[str]) -> Interval:
    return parse_rat(pair[0]), parse_rat(pair[1])


# --- plays ------------------------------------------------------------


def play_to_jsonable(history: History) -> dict:
    return {
        "config": {
            "a0": format_rat(history.config.a0),
            "b0": format_rat(history.config.b0),
        },
        "rounds": [_rat_pair(r) for r in history.rounds],
        "pending_a": None
        if history.pending_a is None
        else format_rat(history.pending_a),
    }


def play_from_jsonable(payload: dict) -> History:
    config = GameConfig(
        parse_rat(payload["config"]["a0"]), parse_rat(payload["config"]["b0"])
    )
    rounds = tuple(_parse_pair(r) for r in payload["rounds"])
    pending = payload.get("pending_a")
    return History(config, rounds, None if pending is None else parse_rat(pending))


# --- trees ------------------------------------------------------------


def tree_to_jsonable(tree: CantorTree, depth: int) -> dict:
    """Materialize nodes through ``depth``; e-rules must be halving."""
    if not isinstance(tree.e_rule, HalvingRule):
        raise ValueError("only halving-rule trees serialize")
    nodes = {"": _rat_pair(tree.root)}
    for n in range(1, depth + 1):
        for idx in range(1 << n):
            path = format(idx, f"0{n}b")
            nodes[path] = _rat_pair(tree.interval(path))
    return {
        "root": _rat_pair(tree.root),
        "e_rule": "halving",
        "e_base": format_rat(tree.e_rule.base),
        "depth": depth,
        "left_anchored": tree.left_anchored,
        "descriptor": tree.descriptor,
        "nodes": nodes,
    }


def tree_from_jsonable(payload: dict) -> CantorTree:
    if "kind" in payload:
        if payload["kind"] == "middle-thirds":
            lo, hi = _parse_pair(payload["host"])
            return middle_thirds(lo, hi)
        raise ValueError(f"unknown tree kind {payload['kind']!r}")
    if payload.get("e_rule") != "halving":
        raise ValueError("only halving-rule trees are loadable")
    nodes = {path: _parse_pair(pair) for path, pair in payload["nodes"].items()}
    return _materialized_tree(
        nodes,
        HalvingRule(parse_rat(payload["e_base"])),
        descriptor=payload.get("descriptor", "loaded"),
        left_anchored=bool(payload.get("left_anchored", False)),
    )


def tree_file_depth(payload: dict) -> int:
    return int(payload["depth"])


# --- targets ----------------------------------------------------------


def target_to_jsonable(target: SetExpr | CoverComplement, tree_depth: int = 6) -> dict:
    if isinstance(target, CoverComplement):
        return {
            "cover_complement": {
                "host": _rat_pair(target.host),
                "cover": [_rat_pair(c) for c in target.cover],
            }
        }
    if not isinstance(target, FiniteUnion):
        target = FiniteUnion((target,))
    parts = []
    for atom in target.parts:
        if isinstance(atom, ClosedInterval):
            parts.append({"interval": [format_rat(atom.lo), format_rat(atom.hi)]})
        elif isinstance(atom, CantorTreeSet):
            parts.append({"tree": tree_to_jsonable(atom.tree, tree_depth)})
        elif isinstance(atom, CountableEnum):
            if not atom.descriptor.startswith(RatEnumeration.SCHEME):
                raise ValueError("only the fixed rational enumeration serializes")
            parts.append(
                {
                    "enum": {
                        "scheme": RatEnumeration.SCHEME,
                        "lo": format_rat(atom.lo),
                        "hi": format_rat(atom.hi),
                    }
                }
            )
        else:
            raise ValueError(f"unsupported atom {atom!r}")
    return {"union": parts}


def target_from_jsonable(payload: dict) -> SetExpr | CoverComplement:
    if "cover_complement" in payload:
        body = payload["cover_complement"]
        return CoverComplement(
            _parse_pair(body["host"]),
            tuple(_parse_pair(c) for c in body["cover"]),
        )
    parts: list[SetExpr] = []
    for entry in payload["union"]:
        if "interval" in entry:
            lo, hi = _parse_pair(entry["interval"])
            parts.append(ClosedInterval(lo, hi))
        elif "tree" in entry:
            parts.append(CantorTreeSet(tree_from_jsonable(entry["tree"])))
        elif "enum" in entry:
            body = entry["enum"]
            if body.get("scheme") != RatEnumeration.SCHEME:
                raise ValueError(f"unknown enumeration scheme {body.get('scheme')!r}")
            parts.append(
                CountableEnum.rationals(parse_rat(body["lo"]), parse_rat(body["hi"]))
            )
        else:
            raise ValueError(f"unknown target atom {entry!r}")
    if len(parts) == 1:
        return parts[0]
    return FiniteUnion(tuple(parts))


# --- extractions --------------------------------------------------------


def extraction_to_jsonable(ex: ExtractedTree) -> dict:
    ledger = {}
    for path, history in ex.ledgers.items():
        args = [format_rat(history.config.a0), format_rat(history.config.b0)]
        for a, b in history.rounds:
            args.extend([format_rat(a), format_rat(b)])
        if history.pending_a is not None:
            args.append(format_rat(history.pending_a))
        ledger[path] = args
    return {
        "side": ex.side,
        "oracle": ex.oracle.descriptor,
        "config": {
            "a0": format_rat(ex.config.a0),
            "b0": format_rat(ex.config.b0),
        },
        "enum": ex.enum.descriptor,
        "initial": {k: format_rat(v) for k, v in ex.initial.items()},
        # Indices can run to thousands of digits; decimal strings keep
        # the file exact and encoder-safe.
        "enum_indices": {
            path: str(k) for path, k in sorted(ex.enum_indices.items())
        },
        "ledger": ledger,
        "tree": tree_to_jsonable(ex.tree, ex.depth),
    }


# --- counterplay traces -------------------------------------------------


def trace_to_jsonable(trace: CounterplayTrace) -> dict:
    return {
        "committed": play_to_jsonable(trace.committed),
        "restarts": [
            {
                "round": ev.round,
                "interval": _rat_pair(ev.interval),
                "new_target": format_rat(ev.new_target),
            }
            for ev in trace.restarts
        ],
        "consistent": trace.consistent,
    }


def trace_from_jsonable(payload: dict) -> tuple[History, list[RestartEvent], bool]:
    committed = play_from_jsonable(payload["committed"])
    restarts = [
        RestartEvent(
            int(ev["round"]),
            _parse_pair(ev["interval"]),
            parse_rat(ev["new_target"]),
        )
        for ev in payload["restarts"]
    ]
    return committed, restarts, bool(payload["consistent"])
