import random
from fractions import Fraction as F

import pytest

from cantorgame.engine import GameConfig, History, StrategyOracle
from cantorgame.extraction import (
    DepthExceededError,
    OracleContractViolationError,
    extract_from_a,
    extract_from_b,
)
from cantorgame.rationals import CapExceededError, RatEnumeration
from cantorgame.strategies import (
    countable_killer_b,
    default_chaser_tree,
    make_reference_oracle,
    tree_chaser_a,
)
from cantorgame.trees import validate_tree

UNIT = GameConfig(F(0), F(1))


def a_oracles():
    return [
        make_reference_oracle("midpoint_A"),
        make_reference_oracle("random_A", 1),
        make_reference_oracle("random_A", 42),
        tree_chaser_a(default_chaser_tree(UNIT)),
    ]


def b_oracles():
    return [
        make_reference_oracle("midpoint_B"),
        make_reference_oracle("squeeze_B"),
        countable_killer_b(RatEnumeration(F(0), F(1))),
        make_reference_oracle("random_B", 7),
    ]


class TestASideScheme:
    def test_midpoint_depth_one_frozen(self):
        ex = extract_from_a(make_reference_oracle("midpoint_A"), UNIT, 1)
        assert ex.initial == {"a1": F(1, 2), "c": F(1, 2), "d": F(1)}
        assert ex.midpoints[""] == F(3, 4)
        # brute-scanned: first in (1/2, 3/4) is 2/3 @ index 4; the oracle
        # then answers 7/12; first in (1/2, 7/12) is 4/7 @ index 13.
        assert ex.nodes["1"] == (F(7, 12), F(2, 3))
        assert ex.enum_indices["1"] == 4
        assert ex.nodes["0"] == (F(15, 28), F(4, 7))
        assert ex.enum_indices["0"] == 13
        chain = [F(1, 2), F(15, 28), F(4, 7), F(7, 12), F(2, 3), F(3, 4), F(1)]
        assert all(u < v for u, v in zip(chain, chain[1:]))

    def test_depth_one_width_bound(self):
        for oracle in a_oracles():
            ex = extract_from_a(oracle, UNIT, 1)
            for path in ("0", "1"):
                c, d = ex.nodes[path]
                assert F(0) < d - c < F(1, 2)

    def test_left_endpoints_are_oracle_responses(self):
        ex = extract_from_a(make_reference_oracle("random_A", 5), UNIT, 4)
        for path, ledger in ex.ledgers.items():
            if path == "":
                continue
            assert ex.oracle.move(ledger) == ex.nodes[path][0]

    def test_right_endpoints_are_enumeration_values(self):
        ex = extract_from_a(make_reference_oracle("midpoint_A"), UNIT, 4)
        for path, idx in ex.enum_indices.items():
            assert ex.enum.at(idx) == ex.nodes[path][1]

    def test_validates_clean_depth_six(self):
        ex = extract_from_a(make_reference_oracle("random_A", 42), UNIT, 6)
        report = validate_tree(ex.tree, 6)
        assert report.ok and report.nodes_checked == 126


class TestBSideScheme:
    def test_midpoint_depth_one_frozen(self):
        ex = extract_from_b(make_reference_oracle("midpoint_B"), UNIT, 1)
        assert ex.initial == {"c": F(0), "d": F(1)}
        assert ex.midpoints[""] == F(1, 2)
        assert ex.nodes["0"] == (F(2, 3), F(5, 6))
        assert ex.enum_indices["0"] == 4
        assert ex.nodes["1"] == (F(6, 7), F(13, 14))
        assert ex.enum_indices["1"] == 64
        chain = [F(1, 2), F(2, 3), F(5, 6), F(6, 7), F(13, 14), F(1)]
        assert all(u < v for u, v in zip(chain, chain[1:]))

    def test_right_endpoints_are_oracle_responses(self):
        ex = extract_from_b(make_reference_oracle("squeeze_B"), UNIT, 4)
        for path, ledger in ex.ledgers.items():
            if path == "":
                continue
            assert ex.oracle.move(ledger) == ex.nodes[path][1]

    def test_depth_one_width_bound(self):
        for oracle in b_oracles():
            ex = extract_from_b(oracle, UNIT, 1)
            for path in ("0", "1"):
                c, d = ex.nodes[path]
                assert F(0) < d - c < F(1, 2)

    def test_killer_extraction_validates(self):
        ex = extract_from_b(countable_killer_b(RatEnumeration(F(0), F(1))), UNIT, 6)
        assert validate_tree(ex.tree, 6).ok


class TestReplay:
    def test_a_side_single_round(self):
        ex = extract_from_a(make_reference_oracle("midpoint_A"), UNIT, 2)
        history, divergence = ex.replay("1")
        assert history.rounds == ((F(1, 2), F(2, 3)),)
        assert divergence is None

    def test_b_side_single_round(self):
        ex = extract_from_b(make_reference_oracle("midpoint_B"), UNIT, 2)
        history, divergence = ex.replay("0")
        assert history.rounds == ((F(2, 3), F(5, 6)),)
        assert divergence is None
        # the reply really is the oracle's response to the pending move
        pending = History(UNIT, (), F(2, 3))
        assert ex.oracle.move(pending) == F(5, 6)

    def test_flagship_every_oracle_twenty_codes(self):
        rng = random.Random(2718)
        extractions = [extract_from_a(o, UNIT, 6) for o in a_oracles()]
        extractions += [extract_from_b(o, UNIT, 6) for o in b_oracles()]
        for ex in extractions:
            for _ in range(20):
                prefix = "".join(rng.choice("01") for _ in range(6))
                history, divergence = ex.replay(prefix)
                assert divergence is None, (ex.oracle.descriptor, prefix)
                a_m, b_m = history.rounds[-1]
                c5, d5 = ex.nodes[prefix[:5]]
                assert c5 <= a_m < b_m <= d5

    def test_ledger_prefixes_are_legal_histories(self):
        ex = extract_from_a(make_reference_oracle("random_A", 9), UNIT, 4)
        for ledger in ex.ledgers.values():
            assert isinstance(ledger, History)  # construction validated it

    def test_depth_exceeded(self):
        ex = extract_from_a(make_reference_oracle("midpoint_A"), UNIT, 2)
        with pytest.raises(DepthExceededError):
            ex.replay("000")

    def test_empty_prefix(self):
        ex = extract_from_a(make_reference_oracle("midpoint_A"), UNIT, 2)
        history, divergence = ex.replay("")
        assert history.rounds == () and divergence is None


class TestContracts:
    def test_determinism_node_for_node(self):
        e1 = extract_from_a(make_reference_oracle("random_A", 42), UNIT, 5)
        e2 = extract_from_a(make_reference_oracle("random_A", 42), UNIT, 5)
        assert e1.nodes == e2.nodes
        assert e1.enum_indices == e2.enum_indices
        assert e1.midpoints == e2.midpoints

    def test_cheating_oracle_aborts(self):
        cheat = StrategyOracle("A", "cheat", lambda h: h.prev_b + 1)
        with pytest.raises(OracleContractViolationError):
            extract_from_a(cheat, UNIT, 1)

    def test_barely_cheating_oracle_identified_with_history(self):
        # Legal first move, illegal second: the error carries the history.
        def move(h):
            if not h.rounds:
                return F(1, 2)
            return h.rounds[-1][0]  # equals a_(n-1): violates strictness

        cheat = StrategyOracle("A", "cheat2", move)
        with pytest.raises(OracleContractViolationError) as exc:
            extract_from_a(cheat, UNIT, 1)
        assert exc.value.history.depth >= 1

    def test_side_mismatch(self):
        with pytest.raises(ValueError):
            extract_from_a(make_reference_oracle("midpoint_B"), UNIT, 2)
        with pytest.raises(ValueError):
            extract_from_b(make_reference_oracle("midpoint_A"), UNIT, 2)

    def test_enum_range_must_match(self):
        with pytest.raises(ValueError):
            extract_from_a(
                make_reference_oracle("midpoint_A"),
                UNIT,
                2,
                enum=RatEnumeration(F(0), F(2)),
            )

    def test_index_cap_propagates(self):
        with pytest.raises(CapExceededError):
            extract_from_b(make_reference_oracle("squeeze_B"), UNIT, 6, index_cap=10**6)

    def test_depth_positive(self):
        with pytest.raises(ValueError):
            extract_from_a(make_reference_oracle("midpoint_A"), UNIT, 0)
