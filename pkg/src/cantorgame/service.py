"""JSON session service: live play against engine oracles, plus
extraction, classification, and counterplay over HTTP.

Sessions live in memory; within a session, move handling is serialized
by a lock and the engine's reply is computed synchronously inside the
move request, so clients always observe a complete round transition.
Every value on the wire is an exact ``num/den`` string, and each
response carries the exact legal bounds for the next human move so
clients can pre-validate without becoming the validator of record.
"""

from __future__ import annotations

import itertools
import json
import threading
from dataclasses import dataclass, field

from fastapi import FastAPI
from fastapi.responses import JSONResponse

from .engine import (
    GameConfig,
    History,
    IllegalMoveError,
    InvalidConfigError,
    Side,
    StrategyOracle,
    WrongTurnError,
    apply_move,
)
from .extraction import extract_from_a, extract_from_b
from .rationals import RatParseError, format_rat, parse_rat
from .serialize import (
    extraction_to_jsonable,
    play_to_jsonable,
    target_from_jsonable,
    trace_to_jsonable,
    tree_to_jsonable,
)
from .strategies import (
    UnknownOracleError,
    counterplay,
    midpoint_sampler,
    resolve_oracle,
)
from .targets import (
    AWins,
    BWins,
    CantorTreeSet,
    ClosedInterval,
    CountableEnum,
    CoverComplement,
    SetExpr,
    atoms,
    atoms_within,
    builtin_target,
    classify_determinacy,
)
from .trees import CantorTree


@dataclass
class Session:
    id: str
    config: GameConfig
    human_side: Side
    engine: StrategyOracle
    target: SetExpr | None
    target_name: str | None
    history: History
    status: str = "awaiting_human"
    last_engine_move: str | None = None
    lock: threading.Lock = field(default_factory=threading.Lock)


def _error(status: int, code: str, detail: str, bound=None) -> JSONResponse:
    body = {"error": code, "detail": detail}
    if bound is not None:
        body["bound"] = {"lo": format_rat(bound[0]), "hi": format_rat(bound[1])}
    return JSONResponse(body, status_code=status)


def _session_view(session: Session) -> dict:
    bounds = session.history.legal_bounds()
    return {
        "id": session.id,
        "config": {
            "a0": format_rat(session.config.a0),
            "b0": format_rat(session.config.b0),
        },
        "human_side": session.human_side,
        "engine": session.engine.descriptor,
        "target": session.target_name,
        "status": session.status,
        "rounds": [[format_rat(a), format_rat(b)] for a, b in session.history.rounds],
        "pending_a": None
        if session.history.pending_a is None
        else format_rat(session.history.pending_a),
        "turn": session.history.turn,
        "legal_bounds": {"lo": format_rat(bounds[0]), "hi": format_rat(bounds[1])},
        "last_engine_move": session.last_engine_move,
        "play": play_to_jsonable(session.history),
    }


def create_app(log_path: str | None = None) -> FastAPI:
    app = FastAPI(title="cantorgame arena")
    sessions: dict[str, Session] = {}
    counter = itertools.count(1)
    store_lock = threading.Lock()

    def log_move(session_id: str, side: str, value: str) -> None:
        if log_path is None:
            return
        with open(log_path, "a", encoding="utf-8") as fh:
            fh.write(
                json.dumps(
                    {"session": session_id, "side": side, "value": value},
                    sort_keys=True,
                )
                + "\n"
            )

    def engine_step(session: Session) -> None:
        """Apply the engine's move when it is the engine's turn."""
        if session.history.turn == session.engine.side:
            value = session.engine.move(session.history)
            session.history = apply_move(session.history, session.engine.side, value)
            session.last_engine_move = format_rat(value)
            log_move(session.id, session.engine.side, format_rat(value))

    @app.post("/session")
    def create_session(payload: dict):
        try:
            config = GameConfig(
                parse_rat(payload["config"]["a0"]),
                parse_rat(payload["config"]["b0"]),
            )
        except (KeyError, TypeError):
            return _error(400, "ParseError", "config requires a0 and b0 strings")
        except RatParseError as err:
            return _error(400, "ParseError", str(err))
        except InvalidConfigError as err:
            return _error(400, "InvalidConfig", str(err))
        human_side = payload.get("human_side", "A")
        if human_side not in ("A", "B"):
            return _error(400, "ParseError", "human_side must be 'A' or 'B'")
        engine_side: Side = "B" if human_side == "A" else "A"
        try:
            engine = resolve_oracle(engine_side, payload.get("engine", "midpoint"), config)
        except (UnknownOracleError, RatParseError, ValueError) as err:
            return _error(400, "UnknownDescriptor", str(err))
        target = None
        target_name = None
        raw_target = payload.get("target")
        if isinstance(raw_target, str):
            try:
                target = builtin_target(raw_target, config.a0, config.b0)
            except ValueError as err:
                return _error(400, "UnknownDescriptor", str(err))
            target_name = raw_target
        elif isinstance(raw_target, dict):
            try:
                loaded = target_from_jsonable(raw_target)
            except (RatParseError, ValueError, KeyError) as err:
                return _error(400, "ParseError", f"bad target payload: {err}")
            if isinstance(loaded, CoverComplement):
                return _error(400, "ParseError", "sessions take set targets only")
            if not atoms_within(loaded, config.a0, config.b0):
                return _error(400, "InvalidConfig", "target extends beyond [a0, b0]")
            target = loaded
            target_name = "inline"
        elif raw_target is not None:
            return _error(400, "ParseError", "target must be a name or an object")
        session = Session(
            id=f"s{next(counter)}",
            config=config,
            human_side=human_side,
            engine=engine,
            target=target,
            target_name=target_name,
            history=History(config),
        )
        engine_step(session)
        with store_lock:
            sessions[session.id] = session
        return _session_view(session)

    @app.get("/session/{session_id}")
    def get_session(session_id: str):
        session = sessions.get(session_id)
        if session is None:
            return _error(404, "NotFound", f"no session {session_id!r}")
        with session.lock:
            return _session_view(session)

    @app.post("/session/{session_id}/move")
    def post_move(session_id: str, payload: dict):
        session = sessions.get(session_id)
        if session is None:
            return _error(404, "NotFound", f"no session {session_id!r}")
        try:
            value = parse_rat(payload.get("value", ""))
        except RatParseError as err:
            return _error(400, "ParseError", str(err))
        with session.lock:
            if session.history.turn != session.human_side:
                return _error(400, "WrongTurn", "engine is on turn")
            bounds = session.history.legal_bounds()
            try:
                session.history = apply_move(
                    session.history, session.human_side, value
                )
            except IllegalMoveError as err:
                return _error(400, "IllegalMove", str(err), bound=(err.lo, err.hi))
            except WrongTurnError as err:
                return _error(400, "WrongTurn", str(err))
            log_move(session.id, session.human_side, format_rat(value))
            engine_step(session)
            view = _session_view(session)
            view["accepted_move"] = format_rat(value)
            view["engine_move"] = session.last_engine_move
            view["previous_bounds"] = {
                "lo": format_rat(bounds[0]),
                "hi": format_rat(bounds[1]),
            }
            return view

    @app.get("/session/{session_id}/target-tree")
    def target_tree(session_id: str, depth: int = 6):
        session = sessions.get(session_id)
        if session is None:
            return _error(404, "NotFound", f"no session {session_id!r}")
        if depth < 0 or depth > 8:
            return _error(400, "ParseError", "overlay depth must be in 0..8")
        intervals: list[list[str]] = []
        if session.target is not None:
            for atom in atoms(session.target):
                if isinstance(atom, ClosedInterval):
                    intervals.append([format_rat(atom.lo), format_rat(atom.hi)])
                elif isinstance(atom, CantorTreeSet):
                    intervals.extend(
                        _leaf_intervals(atom.tree, depth)
                    )
        return {"depth": depth, "intervals": intervals}

    @app.post("/extract")
    def extract(payload: dict):
        try:
            config = _config_from(payload)
            side = payload.get("side", "A")
            depth = int(payload.get("depth", 6))
            oracle = resolve_oracle(side, payload.get("strategy", "midpoint"), config)
            ex = (extract_from_a if side == "A" else extract_from_b)(
                oracle, config, depth
            )
        except (UnknownOracleError, RatParseError, InvalidConfigError, ValueError) as err:
            return _error(400, "UnknownDescriptor", str(err))
        return extraction_to_jsonable(ex)

    @app.post("/classify")
    def classify(payload: dict):
        try:
            target = target_from_jsonable(payload["target"])
            depth = int(payload.get("depth", 6))
        except (KeyError, RatParseError, ValueError) as err:
            return _error(400, "ParseError", f"bad target: {err}")
        verdict = classify_determinacy(target, witness_depth=depth)
        return classification_to_jsonable(verdict, depth)

    @app.post("/counterplay")
    def run_counterplay(payload: dict):
        try:
            config = _config_from(payload)
            oracle = resolve_oracle("B", payload.get("strategy", "midpoint"), config)
            s = parse_rat(payload["target_point"])
            depth = int(payload.get("depth", 20))
            trace = counterplay(oracle, s, midpoint_sampler, depth, config)
        except (KeyError, UnknownOracleError, RatParseError, ValueError) as err:
            return _error(400, "ParseError", str(err))
        return trace_to_jsonable(trace)

    return app


def _config_from(payload: dict) -> GameConfig:
    raw = payload.get("config")
    if raw is None:
        return GameConfig(parse_rat("0/1"), parse_rat("1/1"))
    return GameConfig(parse_rat(raw["a0"]), parse_rat(raw["b0"]))


def _leaf_intervals(tree: CantorTree, depth: int) -> list[list[str]]:
    if depth == 0:
        c, d = tree.root
        return [[format_rat(c), format_rat(d)]]
    out = []
    for idx in range(1 << depth):
        path = format(idx, f"0{depth}b")
        c, d = tree.interval(path)
        out.append([format_rat(c), format_rat(d)])
    return out


def classification_to_jsonable(verdict, depth: int) -> dict:
    """Wire form of a classifier verdict with a serializable witness."""
    if isinstance(verdict, AWins):
        body = verdict.witness.body
        if isinstance(body, ClosedInterval):
            witness = {"interval": [format_rat(body.lo), format_rat(body.hi)]}
        else:
            witness = {"tree": tree_to_jsonable(body, depth)}
        return {"verdict": "AWins", "witness": witness}
    if isinstance(verdict, BWins):
        w = verdict.witness
        if w.count is not None:
            values = [format_rat(w.at(k)) for k in range(w.count)]
            return {
                "verdict": "BWins",
                "witness": {"countable": {"descriptor": w.descriptor, "values": values}},
            }
        sample = [format_rat(w.at(k)) for k in range(10)]
        return {
            "verdict": "BWins",
            "witness": {"countable": {"descriptor": w.descriptor, "sample": sample}},
        }
    return {"verdict": "Unknown", "reason": verdict.reason}
