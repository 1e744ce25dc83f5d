import itertools
import random

import pytest
from hypothesis import given, strategies as st

from evasilab.graphs import LabeledGraph, num_edges, permute_graph
from evasilab.oracle import count_positions_by_orbit
from evasilab.positions import (
    ABSENT,
    PRESENT,
    VERDICT_IN,
    VERDICT_OUT,
    VERDICT_UNDETERMINED,
    Position,
    build_position_table,
    canonical_position,
    child,
    decided_for,
    labeled_verdict,
    position_complement,
    position_complement_map,
    reachable_classes,
    _build_position_table,
)
from evasilab.properties import Property


def positions(max_n=5):
    def build(n):
        m = num_edges(n)
        return st.tuples(st.integers(0, (1 << m) - 1), st.integers(0, (1 << m) - 1)).map(
            lambda t: Position(n, t[0] & t[1], t[1])
        )

    return st.integers(2, max_n).flatmap(build)


def permute_position(p, perm):
    g_present = permute_graph(LabeledGraph(p.n, p.present), perm)
    g_asked = permute_graph(LabeledGraph(p.n, p.asked), perm)
    return Position(p.n, g_present.edges, g_asked.edges)


class TestPosition:
    def test_partition_into_three_sets(self):
        p = Position(5, present=0b1, asked=0b11)
        assert p.present | p.absent | p.unknown == p.full_mask
        assert p.present & p.absent == 0
        assert p.absent == 0b10

    def test_rejects_present_outside_asked(self):
        with pytest.raises(ValueError):
            Position(5, present=0b10, asked=0b01)


class TestChild:
    def test_first_question_present(self):
        p = child(Position.initial(3), 0, PRESENT)
        assert p.present == 0b1 and p.asked == 0b1

    def test_rejects_asked_edge(self):
        p = child(Position.initial(3), 0, PRESENT)
        with pytest.raises(ValueError):
            child(p, 0, ABSENT)

    def test_rejects_bad_answer(self):
        with pytest.raises(ValueError):
            child(Position.initial(3), 0, "maybe")

    @given(positions(), st.integers(0, 9), st.sampled_from((ABSENT, PRESENT)))
    def test_commutes_with_complement_under_answer_flip(self, p, e, answer):
        if e >= num_edges(p.n) or p.asked >> e & 1:
            return
        flipped = PRESENT if answer == ABSENT else ABSENT
        assert position_complement(child(p, e, answer)) == child(position_complement(p), e, flipped)

    def test_answer_order_does_not_matter(self):
        rng = random.Random(7)
        answers = [rng.choice((ABSENT, PRESENT)) for _ in range(10)]
        leaves = set()
        for order in (list(range(10)), list(range(9, -1, -1)), rng.sample(range(10), 10)):
            p = Position.initial(5)
            for e in order:
                p = child(p, e, answers[e])
            leaves.add(p)
        assert len(leaves) == 1


class TestPositionComplement:
    def test_initial_is_self_complementary(self):
        p = Position.initial(5)
        assert position_complement(p) == p

    @given(positions())
    def test_involution(self, p):
        assert position_complement(position_complement(p)) == p

    def test_swaps_present_and_absent(self):
        p = Position(5, present=0b01, asked=0b11)
        q = position_complement(p)
        assert q.present == 0b10 and q.asked == 0b11


class TestCanonicalPosition:
    def test_initial_is_all_unknown_string(self):
        assert canonical_position(Position.initial(5)) == "1" * 10

    def test_edge_transitivity_of_single_present_edge(self):
        a = Position(5, present=1 << 0, asked=1 << 0)  # edge (1,2)
        b = Position(5, present=1 << 9, asked=1 << 9)  # edge (4,5)
        assert canonical_position(a) == canonical_position(b)

    def test_all_ternary_labelings_n3_give_ten_codes(self):
        m = num_edges(3)
        codes = set()
        for present, asked in itertools.product(range(1 << m), repeat=2):
            if present & ~asked:
                continue
            codes.add(canonical_position(Position(3, present, asked)))
        assert len(codes) == 10
        assert len(codes) == count_positions_by_orbit(3, 3)

    @given(positions(max_n=4))
    def test_invariant_under_all_relabelings(self, p):
        code = canonical_position(p)
        for perm in itertools.permutations(range(1, p.n + 1)):
            assert canonical_position(permute_position(p, perm)) == code

    @given(positions(), st.data())
    def test_invariant_under_a_random_relabeling(self, p, data):
        perm = data.draw(st.permutations(tuple(range(1, p.n + 1))))
        assert canonical_position(permute_position(p, tuple(perm))) == canonical_position(p)

    @given(positions(max_n=4), st.data())
    def test_complement_code_depends_only_on_code(self, p, data):
        perm = data.draw(st.permutations(tuple(range(1, p.n + 1))))
        q = permute_position(p, tuple(perm))
        assert canonical_position(position_complement(p)) == canonical_position(position_complement(q))


class TestPositionTable:
    @pytest.mark.parametrize("n,live", [(2, 1), (3, 6), (4, 55), (5, 758)])
    def test_live_class_counts(self, n, live):
        assert len(build_position_table(n)) == live

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_live_plus_completed_matches_group_averaging(self, n):
        tbl = build_position_table(n)
        assert len(tbl) + tbl.class_table.num_classes == count_positions_by_orbit(n, 3)

    def test_level_histogram_n5(self, tbl5):
        levels = {}
        for u in tbl5.unknown_count:
            levels[u] = levels.get(u, 0) + 1
        assert sum(levels.values()) == 758
        assert levels[10] == 1
        assert levels[9] == 2

    def test_initial_id_is_zero_with_full_reachable(self, tbl5):
        assert tbl5.unknown_count[0] == 10
        assert tbl5.reachable[0] == (1 << 34) - 1

    def test_children_cover_every_unknown_edge(self, tbl5):
        for i in range(0, len(tbl5), 17):
            digits = tbl5.rep_digits(i)
            unknown = [e for e in range(10) if digits[e] == 1]
            assert [e for e, _, _ in tbl5.children[i]] == unknown

    def test_reachable_is_union_over_every_unknown_edge(self, tbl5):
        # recompute the union through each unknown edge, not just the stored one
        rng = random.Random(3)
        ids = rng.sample(range(len(tbl5)), 60)
        for i in ids:
            p = tbl5.representative(i)
            for e, a, b in tbl5.children[i]:
                if tbl5.unknown_count[i] == 1:
                    union = (1 << a) | (1 << b)
                else:
                    union = tbl5.reachable[a] | tbl5.reachable[b]
                assert union == tbl5.reachable[i], (i, e)
            # and independently against the definition: completions of the representative
            unknown_edges = [e for e in range(10) if not p.asked >> e & 1]
            reach = 0
            for bits in range(1 << len(unknown_edges)):
                mask = p.present
                for j, e in enumerate(unknown_edges):
                    if bits >> j & 1:
                        mask |= 1 << e
                reach |= 1 << tbl5.class_table.class_of(mask)
            assert reach == tbl5.reachable[i]

    def test_lookup_roundtrips_representatives(self, tbl5):
        for i in (0, 5, 100, 400, 757):
            pos_id, _ = tbl5.lookup(tbl5.representative(i))
            assert pos_id == i

    def test_lookup_rejects_complete_positions(self, tbl5):
        full = (1 << 10) - 1
        with pytest.raises(ValueError):
            tbl5.lookup(Position(5, 0, full))

    def test_rejects_out_of_range_n(self):
        with pytest.raises(ValueError):
            build_position_table(7)

    def test_deterministic_construction(self):
        a = _build_position_table(4)
        b = _build_position_table(4)
        assert a.codes == b.codes
        assert a.children == b.children
        assert a.reachable == b.reachable


class TestReachableAndVerdicts:
    def test_single_unknown_near_complete_position_n3(self, tbl3):
        # all edges present except one unknown: completions are the 2-edge path and the triangle
        p = Position(3, present=0b011, asked=0b011)
        pos_id, _ = tbl3.lookup(p)
        assert reachable_classes(pos_id, tbl3) == (1 << 2) | (1 << 3)

    def test_initial_reachable_is_everything(self, tbl5):
        assert reachable_classes(0, tbl5) == (1 << 34) - 1

    def test_decided_examples(self, tbl3):
        both_in = Property.from_class_ids(3, [2, 3])
        p = Position(3, present=0b011, asked=0b011)
        pos_id, _ = tbl3.lookup(p)
        assert decided_for(pos_id, both_in, tbl3) == VERDICT_IN
        assert decided_for(pos_id, Property.from_class_ids(3, [0]), tbl3) == VERDICT_OUT
        assert decided_for(pos_id, Property.from_class_ids(3, [2]), tbl3) == VERDICT_UNDETERMINED

    def test_initial_undetermined_for_nontrivial(self, tbl5):
        assert decided_for(0, Property.from_class_ids(5, [33]), tbl5) == VERDICT_UNDETERMINED

    def test_labeled_verdict_on_complete_boards(self, tbl5):
        full = (1 << 10) - 1
        p = Position(5, full, full)
        assert labeled_verdict(p, Property.from_class_ids(5, [33]), tbl5) == VERDICT_IN
        assert labeled_verdict(p, Property.from_class_ids(5, [0]), tbl5) == VERDICT_OUT

    def test_decidedness_is_inherited_by_descendants(self, tbl5):
        rng = random.Random(11)
        prop = Property(5, rng.getrandbits(34))
        for _ in range(40):
            p = Position.initial(5)
            verdict = VERDICT_UNDETERMINED
            while not p.is_complete:
                v = labeled_verdict(p, prop, tbl5)
                if verdict != VERDICT_UNDETERMINED:
                    assert v == verdict  # once decided, stays decided the same way
                verdict = v
                unknown = [e for e in range(10) if not p.asked >> e & 1]
                p = child(p, rng.choice(unknown), rng.choice((ABSENT, PRESENT)))


class TestComplementMap:
    def test_is_an_involution_on_ids(self, tbl5):
        pairs = position_complement_map(5)
        for i, (j, _) in enumerate(pairs):
            assert pairs[j][0] == i

    def test_matches_direct_complementation(self, tbl5):
        pairs = position_complement_map(5)
        rng = random.Random(5)
        for i in rng.sample(range(len(tbl5)), 50):
            q = position_complement(tbl5.representative(i))
            assert tbl5.lookup(q)[0] == pairs[i][0]
