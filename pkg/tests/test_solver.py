import random

import pytest

from evasilab.graphs import edge_index, enumerate_classes
from evasilab.oracle import solve_depth_bruteforce
from evasilab.positions import (
    ABSENT,
    PRESENT,
    VERDICT_IN,
    VERDICT_OUT,
    VERDICT_UNDETERMINED,
    Position,
    build_position_table,
    child,
    labeled_verdict,
    position_complement_map,
)
from evasilab.properties import (
    Property,
    builtin,
    graph_complement_image,
    is_complement_closed,
    set_complement,
)
from evasilab.solver import (
    StrategyLeaf,
    StrategyNode,
    adversary_answer,
    best_move,
    extract_strategy,
    is_evasive,
    play_engine_game,
    replay_verify,
    solve,
    strategy_depth,
)


def props(n, seed=0, count=30):
    rng = random.Random(seed)
    k = enumerate_classes(n).num_classes
    return [Property(n, rng.getrandbits(k)) for _ in range(count)]


class TestSolve:
    def test_trivial_properties_need_no_questions(self, tbl5):
        for p in (Property.empty(5), Property.full(5)):
            report = solve(p, tbl5)
            assert report.depth == 0 and not report.evasive

    def test_complete_is_evasive_at_full_depth(self, tbl5):
        report = solve(builtin("complete", 5), tbl5)
        assert report.evasive and report.depth == 10

    def test_empty_graph_property_n3(self, tbl3):
        report = solve(Property.from_class_ids(3, [0]), tbl3)
        assert report.evasive and report.depth == 3

    def test_d_bounded_by_unknown_count(self, tbl5):
        for prop in props(5, seed=1, count=5):
            report = solve(prop, tbl5)
            for i in range(len(tbl5)):
                assert 0 <= report.d[i] <= tbl5.unknown_count[i]
                assert (report.d[i] == 0) == (report.verdicts[i] != VERDICT_UNDETERMINED)
                assert (report.best_edge[i] == -1) == (report.d[i] == 0)

    def test_depth_bound_and_evasive_flag(self, tbl4):
        for mask in range(0, 1 << 11, 13):
            report = solve(Property(4, mask), tbl4)
            assert report.depth <= 6
            assert report.evasive == (report.depth == 6)

    def test_set_complement_leaves_every_d_unchanged(self, tbl5):
        for prop in props(5, seed=2, count=8):
            a = solve(prop, tbl5)
            b = solve(set_complement(prop), tbl5)
            assert a.d == b.d
            assert a.best_edge == b.best_edge

    def test_graph_complement_covariance(self, tbl5):
        pairs = position_complement_map(5)
        for prop in props(5, seed=3, count=6):
            a = solve(prop, tbl5)
            b = solve(graph_complement_image(prop), tbl5)
            for i in range(len(tbl5)):
                assert a.d[i] == b.d[pairs[i][0]]

    def test_complement_closed_property_has_complement_symmetric_d(self, tbl5, discovered_prop):
        assert is_complement_closed(discovered_prop)
        report = solve(discovered_prop, tbl5)
        pairs = position_complement_map(5)
        for i in range(len(tbl5)):
            assert report.d[i] == report.d[pairs[i][0]]

    def test_quotient_solve_is_bit_identical_n4(self, tbl4):
        k = enumerate_classes(4).num_classes
        for mask in range(1 << k):
            prop = Property(4, mask)
            if not is_complement_closed(prop):
                continue
            plain = solve(prop, tbl4)
            quick = solve(prop, tbl4, complement_quotient=True)
            assert plain.d == quick.d
            assert plain.best_edge == quick.best_edge
            assert plain.verdicts == quick.verdicts

    def test_quotient_solve_is_bit_identical_for_discovered_property(self, tbl5, discovered_prop):
        plain = solve(discovered_prop, tbl5)
        quick = solve(discovered_prop, tbl5, complement_quotient=True)
        assert plain.d == quick.d
        assert plain.best_edge == quick.best_edge
        assert plain.verdicts == quick.verdicts

    def test_rejects_mismatched_n(self, tbl5):
        with pytest.raises(ValueError):
            solve(Property.empty(4), tbl5)


class TestIsEvasive:
    def test_all_nontrivial_n3(self, tbl3):
        for mask in range(1, 15):
            assert is_evasive(Property(3, mask), tbl3)
        assert not is_evasive(Property(3, 0), tbl3)
        assert not is_evasive(Property(3, 15), tbl3)

    def test_equals_verdict_of_set_complement_exhaustively_n3(self, tbl3):
        for mask in range(16):
            p = Property(3, mask)
            assert is_evasive(p, tbl3) == is_evasive(set_complement(p), tbl3)

    def test_equals_verdict_of_set_complement_exhaustively_n4(self, tbl4):
        from evasilab.scanner import BatchEvaluator
        import numpy as np

        wins = BatchEvaluator(tbl4).bob_wins(np.arange(1 << 11, dtype=np.int64))
        full = (1 << 11) - 1
        for mask in range(1 << 11):
            assert wins[mask] == wins[full ^ mask]


class TestOracleAgreement:
    @pytest.mark.parametrize("n", [3, 4])
    def test_sampled_properties_match_bruteforce(self, n):
        tbl = build_position_table(n)
        ct = tbl.class_table
        rng = random.Random(n)
        space = 1 << ct.num_classes
        masks = rng.sample(range(space), min(40, space))
        for mask in masks:
            member_codes = frozenset(ct.codes[c] for c in range(ct.num_classes) if mask >> c & 1)
            assert solve(Property(n, mask), tbl).depth == solve_depth_bruteforce(n, member_codes)


class TestBestMove:
    def test_initial_position_opens_at_one_two(self, tbl5):
        for prop in (builtin("connected", 5), builtin("complete", 5)):
            assert best_move(Position.initial(5), prop, tbl5) == (1, 2)

    def test_single_unknown_edge_is_forced(self, tbl3):
        prop = Property.from_class_ids(3, [3])  # triangle only
        p = Position(3, present=0b011, asked=0b011)  # edges (1,2),(1,3) present; (2,3) unknown
        assert best_move(p, prop, tbl3) == (2, 3)

    def test_rejects_decided_positions(self, tbl5):
        with pytest.raises(ValueError):
            best_move(Position.initial(5), Property.empty(5), tbl5)

    def test_pullback_attains_the_optimum_among_all_labeled_edges(self, tbl5):
        prop = builtin("triangle-free", 5)
        report = solve(prop, tbl5)
        rng = random.Random(13)
        checked = 0
        while checked < 60:
            asked = rng.getrandbits(10)
            p = Position(5, asked & rng.getrandbits(10), asked)
            if p.is_complete or labeled_verdict(p, prop, tbl5) != VERDICT_UNDETERMINED:
                continue
            d_here = report.d[tbl5.lookup(p)[0]]
            u, v = best_move(p, prop, tbl5, report)

            def value_of(e):
                vals = []
                for a in (ABSENT, PRESENT):
                    c = child(p, e, a)
                    vals.append(0 if c.is_complete else report.d[tbl5.lookup(c)[0]])
                return 1 + max(vals)

            assert value_of(edge_index(u, v, 5)) == d_here
            for e in range(10):
                if not p.asked >> e & 1:
                    assert value_of(e) >= d_here
            checked += 1

    def test_value_is_relabeling_invariant(self, tbl5):
        from evasilab.graphs import LabeledGraph, permute_graph

        rng = random.Random(9)
        prop = builtin("connected", 5)
        report = solve(prop, tbl5)
        for _ in range(20):
            asked = rng.getrandbits(10)
            present = asked & rng.getrandbits(10)
            p = Position(5, present, asked)
            if p.is_complete or labeled_verdict(p, prop, tbl5) != VERDICT_UNDETERMINED:
                continue
            perm = tuple(rng.sample(range(1, 6), 5))
            q = Position(
                5,
                permute_graph(LabeledGraph(5, p.present), perm).edges,
                permute_graph(LabeledGraph(5, p.asked), perm).edges,
            )
            dp = solve(prop, tbl5).d[tbl5.lookup(p)[0]]
            dq = report.d[tbl5.lookup(q)[0]]
            assert dp == dq


class TestAdversaryAnswer:
    def test_complete_property_hears_yes_until_the_end(self, tbl5):
        prop = builtin("complete", 5)
        report = solve(prop, tbl5)
        p = Position.initial(5)
        while labeled_verdict(p, prop, tbl5) == VERDICT_UNDETERMINED:
            u, v = best_move(p, prop, tbl5, report)
            answer = adversary_answer(p, (u, v), prop, tbl5, report)
            assert answer == PRESENT
            p = child(p, edge_index(u, v, 5), answer)
        assert p.is_complete  # all ten questions were needed

    def test_tie_breaks_to_present(self, tbl3):
        both_in = Property.from_class_ids(3, [2, 3])
        p = Position(3, present=0b011, asked=0b011)
        assert adversary_answer(p, (2, 3), both_in, tbl3) == PRESENT

    def test_empty_graph_property_hears_no_while_it_matters(self, tbl3):
        # all-No is the adversary's unique strict preference up to the last
        # question; at the final edge both answers win and the tie rule says present
        prop = Property.from_class_ids(3, [0])
        p = Position.initial(3)
        report = solve(prop, tbl3)
        for edge in ((1, 2), (1, 3)):
            assert adversary_answer(p, edge, prop, tbl3, report) == ABSENT
            p = child(p, edge_index(*edge, 3), ABSENT)
        assert adversary_answer(p, (2, 3), prop, tbl3, report) == PRESENT

    def test_rejects_asked_edges(self, tbl3):
        p = child(Position.initial(3), 0, PRESENT)
        with pytest.raises(ValueError):
            adversary_answer(p, (1, 2), Property.from_class_ids(3, [0]), tbl3)


class TestStrategy:
    def test_empty_property_is_a_single_out_leaf(self, tbl5):
        tree = extract_strategy(Property.empty(5), tbl5)
        assert tree == StrategyLeaf(VERDICT_OUT)

    def test_triangle_property_n3_tree_shape(self, tbl3):
        # evasive at depth C(3,2)=3: the all-present line runs the full three
        # questions, while any absent answer settles "out" on the spot
        tree = extract_strategy(Property.from_class_ids(3, [3]), tbl3)
        leaves = []

        def walk(node, depth):
            if isinstance(node, StrategyLeaf):
                leaves.append((depth, node.verdict))
                return
            walk(node.absent, depth + 1)
            walk(node.present, depth + 1)

        walk(tree, 0)
        assert strategy_depth(tree) == 3
        assert sorted(leaves) == [(1, VERDICT_OUT), (2, VERDICT_OUT), (3, VERDICT_IN), (3, VERDICT_OUT)]

    def test_tree_depth_matches_report_depth(self, tbl4):
        for prop in props(4, seed=4, count=10):
            tree = extract_strategy(prop, tbl4)
            assert strategy_depth(tree) == solve(prop, tbl4).depth

    def test_no_edge_asked_twice_on_any_path(self, tbl4):
        prop = builtin("connected", 4)
        tree = extract_strategy(prop, tbl4)

        def walk(node, asked):
            if isinstance(node, StrategyLeaf):
                return
            assert node.question not in asked
            walk(node.absent, asked | {node.question})
            walk(node.present, asked | {node.question})

        walk(tree, set())


class TestReplayVerify:
    def test_passes_for_extracted_trees(self, tbl4):
        for prop in props(4, seed=5, count=8) + [Property.empty(4), Property.full(4)]:
            report = replay_verify(extract_strategy(prop, tbl4), prop, tbl4)
            assert report.ok, report.failures
            assert report.max_questions <= report.claimed_depth

    def test_single_leaf_tree_for_empty_property(self, tbl5):
        report = replay_verify(extract_strategy(Property.empty(5), tbl5), Property.empty(5), tbl5)
        assert report.ok and report.paths == 1

    def test_flipped_leaf_is_caught_with_its_path(self, tbl3):
        prop = Property.from_class_ids(3, [3])
        tree = extract_strategy(prop, tbl3)

        def flip_first_leaf(node):
            if isinstance(node, StrategyLeaf):
                wrong = VERDICT_IN if node.verdict == VERDICT_OUT else VERDICT_OUT
                return StrategyLeaf(wrong)
            return StrategyNode(node.question, flip_first_leaf(node.absent), node.present)

        report = replay_verify(flip_first_leaf(tree), prop, tbl3)
        assert not report.ok
        assert any("claims" in f for f in report.failures)

    def test_repeated_question_is_caught(self, tbl3):
        prop = Property.from_class_ids(3, [0])
        bad = StrategyNode(
            (1, 2),
            StrategyNode((1, 2), StrategyLeaf(VERDICT_OUT), StrategyLeaf(VERDICT_OUT)),
            StrategyLeaf(VERDICT_OUT),
        )
        report = replay_verify(bad, prop, tbl3)
        assert not report.ok
        assert any("twice" in f for f in report.failures)


class TestEngineGame:
    @pytest.mark.parametrize("name", ["complete", "connected", "triangle-free"])
    def test_engine_vs_engine_lasts_exactly_depth_questions(self, name, tbl5):
        prop = builtin(name, 5)
        assert len(play_engine_game(prop, tbl5)) == solve(prop, tbl5).depth

    def test_engine_vs_engine_on_random_n4_properties(self, tbl4):
        for prop in props(4, seed=6, count=15):
            assert len(play_engine_game(prop, tbl4)) == solve(prop, tbl4).depth
