"""Command-line shell: play, extract, verify, classify, counterplay, serve."""

from __future__ import annotations

import argparse
import json
import sys

from .engine import (
    GameConfig,
    History,
    IllegalMoveError,
    apply_move,
    check_consistency,
    limit_bracket,
)
from .extraction import extract_from_a, extract_from_b
from .rationals import RatParseError, format_rat, parse_rat
from .serialize import (
    canonical_json,
    extraction_to_jsonable,
    play_to_jsonable,
    target_from_jsonable,
    trace_to_jsonable,
    tree_from_jsonable,
)
from .service import classification_to_jsonable
from .strategies import counterplay, midpoint_sampler, oracle_from_descriptor, resolve_oracle
from .targets import classify_determinacy
from .trees import validate_tree


def _add_config_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--a0", default="0/1", help="left endpoint (num/den)")
    parser.add_argument("--b0", default="1/1", help="right endpoint (num/den)")


def _config(args) -> GameConfig:
    return GameConfig(parse_rat(args.a0), parse_rat(args.b0))


def _emit(args, payload: dict) -> None:
    text = canonical_json(payload)
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_play(args) -> int:
    config = _config(args)
    human = args.human
    engine_side = "B" if human == "A" else "A"
    engine = resolve_oracle(engine_side, args.engine, config)
    history = History(config)
    print(f"game on [{args.a0}, {args.b0}]; you are {human} vs {engine.descriptor}")
    rounds_limit = args.rounds

    def engine_turn(h: History) -> History:
        if h.turn == engine_side:
            value = engine.move(h)
            print(f"engine {engine_side} plays {format_rat(value)}")
            return apply_move(h, engine_side, value)
        return h

    history = engine_turn(history)
    while history.depth < rounds_limit:
        lo, hi = history.legal_bounds()
        print(f"your move ({format_rat(lo)} < move < {format_rat(hi)}): ", end="", flush=True)
        line = sys.stdin.readline()
        if not line:
            break
        line = line.strip()
        if not line or line in ("q", "quit"):
            break
        try:
            value = parse_rat(line)
            history = apply_move(history, human, value)
        except (RatParseError, IllegalMoveError) as err:
            print(f"rejected: {err}")
            continue
        history = engine_turn(history)
        if history.depth:
            bracket = limit_bracket(history)
            print(
                f"round {bracket.depth}: bracket "
                f"({format_rat(bracket.lo)}, {format_rat(bracket.hi)})"
            )
    sys.stdout.write(canonical_json(play_to_jsonable(history)))
    return 0


def cmd_extract(args) -> int:
    config = _config(args)
    oracle = resolve_oracle(args.side, args.strategy, config)
    extractor = extract_from_a if args.side == "A" else extract_from_b
    ex = extractor(oracle, config, args.depth)
    _emit(args, extraction_to_jsonable(ex))
    return 0


def _verify_tree_payload(payload: dict) -> list[str]:
    tree = tree_from_jsonable(payload)
    depth = int(payload.get("depth", 1))
    report = validate_tree(tree, depth)
    return [
        f"{v.clause} at {','.join(v.paths)}: {v.detail}" for v in report.violations
    ]


def _verify_extraction_payload(payload: dict) -> list[str]:
    problems = _verify_tree_payload(payload["tree"])
    side = payload["side"]
    nodes = {
        path: (parse_rat(pair[0]), parse_rat(pair[1]))
        for path, pair in payload["tree"]["nodes"].items()
    }
    config = GameConfig(
        parse_rat(payload["config"]["a0"]), parse_rat(payload["config"]["b0"])
    )
    # Ledger entries must be legal plays whose values match the node map.
    for path, args_list in sorted(payload["ledger"].items()):
        values = [parse_rat(v) for v in args_list]
        if (values[0], values[1]) != (config.a0, config.b0):
            problems.append(f"ledger {path!r} does not start at the game interval")
            continue
        body = values[2:]
        pending = None
        if side == "B":
            pending = body[-1]
            body = body[:-1]
        if len(body) % 2:
            problems.append(f"ledger {path!r} has a dangling move")
            continue
        rounds = tuple((body[i], body[i + 1]) for i in range(0, len(body), 2))
        try:
            History(config, rounds, pending)
        except (IllegalMoveError, ValueError) as err:
            problems.append(f"ledger {path!r} is not a legal play: {err}")
            continue
        expected = _expected_ledger(side, path, nodes)
        if expected is not None and (rounds, pending) != expected:
            problems.append(f"ledger {path!r} disagrees with the node endpoints")
    oracle = oracle_from_descriptor(payload.get("oracle", ""))
    if oracle is not None:
        ex_depth = int(payload["tree"]["depth"])
        sample = ["0" * ex_depth, "1" * ex_depth, ("01" * ex_depth)[:ex_depth]]
        for prefix in sample:
            try:
                rounds = []
                for j in range(1, len(prefix) + 1):
                    if side == "A":
                        a = nodes[prefix[: j - 1]][0]
                    else:
                        a = nodes[prefix[:j]][0]
                    rounds.append((a, nodes[prefix[:j]][1]))
                history = History(config, tuple(rounds))
            except (KeyError, IllegalMoveError, ValueError) as err:
                problems.append(f"replay of code {prefix!r} is not a legal play: {err}")
                continue
            divergence = check_consistency(history, oracle, side)
            if divergence is not None:
                problems.append(
                    f"replay of code {prefix!r} diverges at round {divergence.round}"
                )
    return problems


def _expected_ledger(side, path, nodes):
    if path == "":
        return ((), None) if side == "A" else None
    try:
        if side == "A":
            rounds = tuple(
                (nodes[path[: j - 1]][0], nodes[path[:j]][1])
                for j in range(1, len(path) + 1)
            )
            return rounds, None
        rounds = tuple(
            (nodes[path[:j]][0], nodes[path[:j]][1])
            for j in range(1, len(path))
        )
        return rounds, nodes[path][0]
    except KeyError:
        return None


def cmd_verify(args) -> int:
    with open(args.file, "r", encoding="utf-8") as fh:
        payload = json.load(fh)
    try:
        if "side" in payload and "tree" in payload:
            problems = _verify_extraction_payload(payload)
        elif "nodes" in payload:
            problems = _verify_tree_payload(payload)
        elif "tree" in payload:
            problems = _verify_tree_payload(payload["tree"])
        else:
            print("verify: unrecognized file shape", file=sys.stderr)
            return 2
    except Exception as err:  # malformed files count as violations
        problems = [f"file is not checkable: {err}"]
    for line in problems:
        print(f"violation: {line}")
    print(f"verify: {len(problems)} violation(s)")
    return 0 if not problems else 1


def cmd_classify(args) -> int:
    with open(args.file, "r", encoding="utf-8") as fh:
        payload = json.load(fh)
    target = target_from_jsonable(payload)
    verdict = classify_determinacy(target, witness_depth=args.depth)
    _emit(args, classification_to_jsonable(verdict, args.depth))
    return 0


def cmd_counterplay(args) -> int:
    config = _config(args)
    oracle = resolve_oracle("B", args.strategy, config)
    trace = counterplay(
        oracle, parse_rat(args.target_point), midpoint_sampler, args.depth, config
    )
    _emit(args, trace_to_jsonable(trace))
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(log_path=args.log), host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cantor-game",
        description="Cantor game engine: exact plays, extraction, certificates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("play", help="interactive terminal session")
    p.add_argument("--human", choices=["A", "B"], default="A")
    p.add_argument("--engine", default="midpoint", help="engine strategy spec")
    p.add_argument("--rounds", type=int, default=10)
    _add_config_args(p)
    p.set_defaults(func=cmd_play)

    p = sub.add_parser("extract", help="build a tree inside a strategy's limit set")
    p.add_argument("--side", choices=["A", "B"], required=True)
    p.add_argument("--strategy", required=True)
    p.add_argument("--depth", type=int, default=6)
    p.add_argument("--out")
    _add_config_args(p)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("verify", help="validate a tree or extraction file")
    p.add_argument("file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classify", help="determinacy verdict for a target file")
    p.add_argument("file")
    p.add_argument("--depth", type=int, default=6)
    p.add_argument("--out")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("counterplay", help="chase a target point against a B oracle")
    p.add_argument("--strategy", required=True)
    p.add_argument("--target-point", required=True)
    p.add_argument("--depth", type=int, default=20)
    p.add_argument("--out")
    _add_config_args(p)
    p.set_defaults(func=cmd_counterplay)

    p = sub.add_parser("serve", help="run the JSON session service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--log", help="append-only move log file")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
