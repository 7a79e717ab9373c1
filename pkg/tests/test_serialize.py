from fractions import Fraction as F

import pytest

from cantorgame.engine import GameConfig, History
from cantorgame.extraction import extract_from_a, extract_from_b
from cantorgame.serialize import (
    canonical_json,
    extraction_to_jsonable,
    play_from_jsonable,
    play_to_jsonable,
    target_from_jsonable,
    target_to_jsonable,
    trace_from_jsonable,
    trace_to_jsonable,
    tree_from_jsonable,
    tree_to_jsonable,
)
from cantorgame.strategies import (
    counterplay,
    make_reference_oracle,
    midpoint_sampler,
    target_dodger_b,
)
from cantorgame.targets import (
    CantorTreeSet,
    ClosedInterval,
    CountableEnum,
    CoverComplement,
    FiniteUnion,
)
from cantorgame.trees import middle_thirds, validate_tree

UNIT = GameConfig(F(0), F(1))


class TestPlayFormat:
    def test_round_trip(self):
        h = History(UNIT, ((F(1, 2), F(3, 4)),), F(5, 8))
        payload = play_to_jsonable(h)
        assert payload["rounds"] == [["1/2", "3/4"]]
        assert payload["pending_a"] == "5/8"
        assert play_from_jsonable(payload) == h

    def test_null_pending(self):
        h = History(UNIT)
        payload = play_to_jsonable(h)
        assert payload["pending_a"] is None
        assert play_from_jsonable(payload) == h


class TestTreeFormat:
    def test_round_trip_preserves_nodes(self):
        t = middle_thirds()
        payload = tree_to_jsonable(t, 4)
        loaded = tree_from_jsonable(payload)
        for path in ("", "0", "1", "0101"):
            assert loaded.interval(path) == t.interval(path)
        assert loaded.left_anchored
        assert validate_tree(loaded, 4).ok

    def test_kind_form(self):
        loaded = tree_from_jsonable(
            {"kind": "middle-thirds", "host": ["1/8", "7/8"]}
        )
        assert loaded.root == (F(1, 8), F(7, 8))


class TestTargetFormat:
    def test_union_round_trip(self):
        target = FiniteUnion(
            (
                ClosedInterval(F(3, 4), F(1)),
                CantorTreeSet(middle_thirds()),
                CountableEnum.rationals(F(0), F(1)),
            )
        )
        loaded = target_from_jsonable(target_to_jsonable(target, tree_depth=3))
        assert isinstance(loaded, FiniteUnion)
        interval, tree_set, enum = loaded.parts
        assert interval == ClosedInterval(F(3, 4), F(1))
        assert tree_set.tree.interval("1") == (F(2, 3), F(1))
        assert enum.at(2) == F(1, 2)

    def test_cover_complement_round_trip(self):
        target = CoverComplement((F(0), F(1)), ((F(1, 4), F(1, 2)),))
        loaded = target_from_jsonable(target_to_jsonable(target))
        assert loaded == target

    def test_unknown_scheme_rejected(self):
        with pytest.raises(ValueError):
            target_from_jsonable(
                {"union": [{"enum": {"scheme": "farey", "lo": "0/1", "hi": "1/1"}}]}
            )


class TestExtractionFormat:
    def test_ledger_args_are_definition_tuples(self):
        ex = extract_from_a(make_reference_oracle("midpoint_A"), UNIT, 2)
        payload = extraction_to_jsonable(ex)
        assert payload["ledger"][""] == ["0/1", "1/1"]
        assert payload["ledger"]["1"] == ["0/1", "1/1", "1/2", "2/3"]
        ex_b = extract_from_b(make_reference_oracle("midpoint_B"), UNIT, 2)
        payload_b = extraction_to_jsonable(ex_b)
        assert payload_b["ledger"]["0"] == ["0/1", "1/1", "2/3"]

    def test_enum_indices_are_decimal_strings(self):
        ex = extract_from_b(make_reference_oracle("squeeze_B"), UNIT, 4)
        payload = extraction_to_jsonable(ex)
        assert all(isinstance(v, str) for v in payload["enum_indices"].values())
        assert int(payload["enum_indices"]["0"]) == ex.enum_indices["0"]


class TestTraceFormat:
    def test_round_trip(self):
        trace = counterplay(target_dodger_b(F(1, 3)), F(1, 3), midpoint_sampler, 6)
        payload = trace_to_jsonable(trace)
        committed, restarts, consistent = trace_from_jsonable(payload)
        assert committed == trace.committed
        assert tuple(restarts) == trace.restarts
        assert consistent == trace.consistent is True


class TestCanonicalJson:
    def test_stable_bytes(self):
        payload = {"b": ["1/2", "3/4"], "a": {"x": 1}}
        assert canonical_json(payload) == canonical_json(
            {"a": {"x": 1}, "b": ["1/2", "3/4"]}
        )
        assert canonical_json(payload).endswith("\n")
