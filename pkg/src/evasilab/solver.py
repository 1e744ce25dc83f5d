"""Exact evaluation of the edge-probing game for a fixed property.

For every canonical position the solver computes D, the number of further
questions Bob needs in the worst case under optimal play by both sides:
D = 0 where the completion set already lies on one side of the property,
and otherwise the min over unknown edges of 1 + max over the two answers.
A property is evasive exactly when D at the opening position equals
C(n, 2), i.e. Alice can force every question.

Positions are evaluated bottom-up over the canonical table, so one solve
touches each class once.  Tie-breaks are frozen: Bob prefers the smallest
canonical edge index and then the smallest labeled edge, Alice prefers
"present"; strategy exports are therefore byte-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graphs import edge_endpoints, edge_index, perm_tables
from .positions import (
    ABSENT,
    PRESENT,
    VERDICT_IN,
    VERDICT_OUT,
    VERDICT_UNDETERMINED,
    Position,
    PositionTable,
    child,
    labeled_verdict,
    position_complement_map,
)
from .properties import Property, is_complement_closed

_BIG = 1 << 30


@dataclass(frozen=True, eq=False)
class SolveReport:
    """Per-position game values for one property.

    d[id] is the worst-case number of further questions from that class;
    best_edge[id] is a canonical unknown edge attaining it (-1 where the
    position is already decided); verdicts[id] is in/out/undetermined.
    """

    prop: Property
    n: int
    depth: int
    evasive: bool
    d: tuple[int, ...]
    best_edge: tuple[int, ...]
    verdicts: tuple[str, ...]
    edge_values: tuple[tuple[int, ...] | None, ...] = field(repr=False)

    def verdict(self, pos_id: int) -> str:
        return self.verdicts[pos_id]


def _edge_values_at(pos_id: int, d: list[int], tbl: PositionTable) -> tuple[int, ...]:
    """Value 1 + max(D(absent), D(present)) per stored child pair, in child order."""
    if tbl.unknown_count[pos_id] == 1:
        return (1,)
    out = []
    for _, a, b in tbl.children[pos_id]:
        da, db = d[a], d[b]
        out.append(1 + (da if da >= db else db))
    return tuple(out)


def solve(prop: Property, tbl: PositionTable, *, complement_quotient: bool = False) -> SolveReport:
    """Evaluate every canonical position bottom-up against the property.

    With complement_quotient=True and a complement-closed property, half
    the positions are filled by translating their complement partner's
    values through the recorded relabeling; the output is identical to the
    plain pass.
    """
    if prop.n != tbl.n:
        raise ValueError(f"property has n={prop.n} but table has n={tbl.n}")
    members = prop.members
    total = len(tbl)
    d = [0] * total
    best = [-1] * total
    verdicts = [VERDICT_UNDETERMINED] * total
    values: list[tuple[int, ...] | None] = [None] * total

    quotient = complement_quotient and is_complement_closed(prop)
    comp_pairs = position_complement_map(tbl.n) if quotient else None
    emaps = perm_tables(tbl.n).edge_maps if quotient else None

    reach_arr = tbl.reachable
    uc = tbl.unknown_count
    children = tbl.children
    for i in range(total - 1, -1, -1):  # ascending unknown count
        reach = reach_arr[i]
        hit = reach & members
        if hit == reach:
            verdicts[i] = VERDICT_IN
            continue
        if hit == 0:
            verdicts[i] = VERDICT_OUT
            continue
        if quotient:
            partner, k = comp_pairs[i]
            if partner > i:  # partner already computed
                d[i] = d[partner]
                emap = emaps[k]
                # value of edge e here equals the partner's value at emap[k, e]
                partner_vals = dict(
                    zip((e for e, _, _ in children[partner]), values[partner])
                )
                vals = tuple(partner_vals[int(emap[e])] for e, _, _ in children[i])
                values[i] = vals
                best_val = min(vals)
                for (e, _, _), v in zip(children[i], vals):
                    if v == best_val:
                        best[i] = e
                        break
                continue
        vals = _edge_values_at(i, d, tbl)
        values[i] = vals
        best_val = _BIG
        best_e = -1
        for (e, _, _), v in zip(children[i], vals):
            if v < best_val:
                best_val, best_e = v, e
        d[i] = best_val
        best[i] = best_e

    depth = d[tbl.INITIAL_ID]
    return SolveReport(
        prop=prop,
        n=tbl.n,
        depth=depth,
        evasive=depth == tbl.m,
        d=tuple(d),
        best_edge=tuple(best),
        verdicts=tuple(verdicts),
        edge_values=tuple(values),
    )


def is_evasive(prop: Property, tbl: PositionTable) -> bool:
    """True iff Alice can force all C(n, 2) questions."""
    return solve(prop, tbl).evasive


def _labeled_candidates(p: Position, report: SolveReport, tbl: PositionTable) -> list[int]:
    """Labeled edge indices whose canonical image attains the optimal value."""
    pos_id, k = tbl.lookup(p)
    if report.verdicts[pos_id] != VERDICT_UNDETERMINED:
        raise ValueError("position is already decided; there is no move to make")
    target = report.d[pos_id]
    vals = report.edge_values[pos_id]
    inv = perm_tables(tbl.n).inv_edge_maps[k]
    return [int(inv[e]) for (e, _, _), v in zip(tbl.children[pos_id], vals) if v == target]


def best_move(p: Position, prop: Property, tbl: PositionTable, report: SolveReport | None = None) -> tuple[int, int]:
    """Bob's optimal question at a labeled position, as a vertex pair.

    Among canonical moves attaining the optimum, the smallest labeled edge
    index wins, so the answer is deterministic.
    """
    if report is None:
        report = solve(prop, tbl)
    e = min(_labeled_candidates(p, report, tbl))
    return edge_endpoints(e, tbl.n)


def _child_depth(p: Position, tbl: PositionTable, report: SolveReport) -> int:
    if p.is_complete:
        return 0
    pos_id, _ = tbl.lookup(p)
    return report.d[pos_id]


def adversary_answer(p: Position, edge: tuple[int, int], prop: Property, tbl: PositionTable,
                     report: SolveReport | None = None) -> str:
    """Alice's optimal answer to a question: keep the deeper child, prefer "present"."""
    if report is None:
        report = solve(prop, tbl)
    e = edge_index(min(edge), max(edge), tbl.n)
    if p.asked >> e & 1:
        raise ValueError(f"edge {tuple(edge)} was already asked")
    d_absent = _child_depth(child(p, e, ABSENT), tbl, report)
    d_present = _child_depth(child(p, e, PRESENT), tbl, report)
    return ABSENT if d_absent > d_present else PRESENT


@dataclass(frozen=True)
class StrategyLeaf:
    verdict: str


@dataclass(frozen=True)
class StrategyNode:
    question: tuple[int, int]
    absent: "StrategyNode | StrategyLeaf"
    present: "StrategyNode | StrategyLeaf"


StrategyTree = StrategyNode | StrategyLeaf


def extract_strategy(prop: Property, tbl: PositionTable) -> StrategyTree:
    """Bob's explicit decision tree over labeled positions, following best_move."""
    report = solve(prop, tbl)

    def rec(p: Position) -> StrategyTree:
        verdict = labeled_verdict(p, prop, tbl)
        if verdict != VERDICT_UNDETERMINED:
            return StrategyLeaf(verdict)
        e = min(_labeled_candidates(p, report, tbl))
        return StrategyNode(
            question=edge_endpoints(e, tbl.n),
            absent=rec(child(p, e, ABSENT)),
            present=rec(child(p, e, PRESENT)),
        )

    return rec(Position.initial(tbl.n))


def strategy_depth(tree: StrategyTree) -> int:
    if isinstance(tree, StrategyLeaf):
        return 0
    return 1 + max(strategy_depth(tree.absent), strategy_depth(tree.present))


@dataclass(frozen=True)
class ReplayReport:
    """Outcome of auditing a strategy tree by walking every answer path."""

    ok: bool
    paths: int
    max_questions: int
    claimed_depth: int
    failures: tuple[str, ...]


def replay_verify(tree: StrategyTree, prop: Property, tbl: PositionTable) -> ReplayReport:
    """Replay every root-to-leaf path of a strategy tree and audit it.

    Checks that every question targets an unknown edge, that each leaf
    verdict matches the completion set of the reached position, and that
    no path exceeds the depth claimed by a fresh solve.  Failures are
    returned in the report, not raised.
    """
    claimed = solve(prop, tbl).depth
    failures: list[str] = []
    paths = 0
    max_q = 0

    def describe(path) -> str:
        return " ".join(f"{u}-{v}:{a}" for (u, v), a in path)

    def walk(node: StrategyTree, p: Position, path: list) -> None:
        nonlocal paths, max_q
        if isinstance(node, StrategyLeaf):
            paths += 1
            max_q = max(max_q, len(path))
            actual = labeled_verdict(p, prop, tbl)
            if actual == VERDICT_UNDETERMINED:
                failures.append(f"leaf reached an undecided position after [{describe(path)}]")
            elif actual != node.verdict:
                failures.append(
                    f"leaf claims {node.verdict!r} but position is {actual!r} after [{describe(path)}]"
                )
            if len(path) > claimed:
                failures.append(f"path length {len(path)} exceeds claimed depth {claimed}")
            return
        u, v = node.question
        try:
            e = edge_index(u, v, tbl.n)
        except ValueError:
            failures.append(f"invalid question {node.question} after [{describe(path)}]")
            return
        if p.asked >> e & 1:
            failures.append(f"edge {node.question} asked twice after [{describe(path)}]")
            return
        walk(node.absent, child(p, e, ABSENT), path + [((u, v), ABSENT)])
        walk(node.present, child(p, e, PRESENT), path + [((u, v), PRESENT)])

    walk(tree, Position.initial(tbl.n), [])
    return ReplayReport(
        ok=not failures,
        paths=paths,
        max_questions=max_q,
        claimed_depth=claimed,
        failures=tuple(failures),
    )


def play_engine_game(prop: Property, tbl: PositionTable) -> list[tuple[tuple[int, int], str]]:
    """Engine-vs-engine line: optimal Bob against the optimal adversary."""
    report = solve(prop, tbl)
    p = Position.initial(tbl.n)
    history: list[tuple[tuple[int, int], str]] = []
    while labeled_verdict(p, prop, tbl) == VERDICT_UNDETERMINED:
        q = best_move(p, prop, tbl, report)
        a = adversary_answer(p, q, prop, tbl, report)
        history.append((q, a))
        p = child(p, edge_index(*q, tbl.n), a)
    return history
