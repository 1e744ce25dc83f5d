"""Game positions: ternary edge labelings of K_n and their canonical table.

A position records, for every vertex pair, whether the edge was answered
present, answered absent, or not asked yet.  Positions are canonicalised
exactly like graphs (lexicographic minimum over all vertex relabelings,
with digits absent=0, unknown=1, present=2, so the opening position is the
all-1 string).

The PositionTable holds one entry per canonical class with at least one
unknown edge; a fully answered board is just a graph and is referenced by
its ClassId instead.  The table is built top-down from the opening
position with memoisation on canonical codes -- the full 3^C(n,2) sweep is
never materialised, which is what keeps n=6 tractable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .graphs import (
    ClassTable,
    check_n,
    digits_mask,
    edge_endpoints,
    enumerate_classes,
    mask_digits,
    num_edges,
    perm_tables,
)

ABSENT = "absent"
PRESENT = "present"
ANSWERS = (ABSENT, PRESENT)

VERDICT_IN = "in"
VERDICT_OUT = "out"
VERDICT_UNDETERMINED = "undetermined"

# digit values of the ternary encoding
DIGIT_ABSENT = 0
DIGIT_UNKNOWN = 1
DIGIT_PRESENT = 2


@dataclass(frozen=True)
class Position:
    """Edges answered so far: `present` and `asked` are edge bitmasks, present ⊆ asked."""

    n: int
    present: int = 0
    asked: int = 0

    def __post_init__(self) -> None:
        check_n(self.n)
        full = (1 << num_edges(self.n)) - 1
        if not 0 <= self.asked <= full:
            raise ValueError(f"asked mask {self.asked:#x} out of range for n={self.n}")
        if self.present & ~self.asked:
            raise ValueError("present edges must be a subset of asked edges")

    @classmethod
    def initial(cls, n: int) -> "Position":
        return cls(n, 0, 0)

    @property
    def full_mask(self) -> int:
        return (1 << num_edges(self.n)) - 1

    @property
    def absent(self) -> int:
        return self.asked & ~self.present

    @property
    def unknown(self) -> int:
        return self.full_mask & ~self.asked

    @property
    def unknown_count(self) -> int:
        return self.unknown.bit_count()

    @property
    def is_complete(self) -> bool:
        return self.asked == self.full_mask

    def digits(self) -> np.ndarray:
        m = num_edges(self.n)
        asked = mask_digits(self.asked, m)
        present = mask_digits(self.present, m)
        return 1 - asked + 2 * present

    def edge_state(self, index: int) -> str:
        if not self.asked >> index & 1:
            return "unknown"
        return PRESENT if self.present >> index & 1 else ABSENT


def child(p: Position, e: int, answer: str) -> Position:
    """The position after asking edge index e and hearing `answer`."""
    if answer not in ANSWERS:
        raise ValueError(f"answer must be one of {ANSWERS}, got {answer!r}")
    bit = 1 << e
    if not 0 <= e < num_edges(p.n):
        raise ValueError(f"edge index {e} out of range for n={p.n}")
    if p.asked & bit:
        raise ValueError(f"edge {edge_endpoints(e, p.n)} was already asked")
    present = p.present | bit if answer == PRESENT else p.present
    return Position(p.n, present, p.asked | bit)


def position_complement(p: Position) -> Position:
    """Swap present and absent answers; unknown edges stay unknown."""
    return Position(p.n, p.asked & ~p.present, p.asked)


def _canonical_digits(digits: np.ndarray, pt) -> tuple[int, int]:
    """(minimal base-3 code, index of the first minimising permutation)."""
    rows = digits[pt.inv_edge_maps]
    codes = rows @ pt.pow3
    k = int(np.argmin(codes))
    return int(codes[k]), k


def canonical_position(p: Position) -> str:
    """Lex-minimal ternary digit string of p over all vertex relabelings."""
    pt = perm_tables(p.n)
    code, _ = _canonical_digits(p.digits().astype(np.int64), pt)
    return _code_str(code, pt.m)


def _code_str(code: int, m: int) -> str:
    out = []
    for _ in range(m):
        code, d = divmod(code, 3)
        out.append(str(d))
    return "".join(reversed(out))


def _code_digits(code: int, m: int) -> np.ndarray:
    out = np.empty(m, dtype=np.int64)
    for i in range(m - 1, -1, -1):
        code, out[i] = divmod(code, 3)
    return out


@dataclass(frozen=True, eq=False)
class PositionTable:
    """Canonical classes of positions with at least one unknown edge.

    Ids are assigned by sorting on (descending unknown count, ascending
    code), so id 0 is the opening position and the 1-unknown classes come
    last.  `children[id]` lists, per unknown edge of the canonical
    representative in ascending edge order, the pair reached by answering
    (absent, present); the pair entries are PosIds while the parent has
    2+ unknown edges and ClassIds (completed boards) when it has exactly 1.
    """

    n: int
    m: int
    class_table: ClassTable
    codes: tuple[int, ...]
    unknown_count: tuple[int, ...]
    children: tuple[tuple[tuple[int, int, int], ...], ...]
    reachable: tuple[int, ...]
    id_by_code: dict[int, int] = field(repr=False)

    INITIAL_ID = 0

    def __len__(self) -> int:
        return len(self.codes)

    @property
    def num_classes(self) -> int:
        return len(self.codes)

    def code_string(self, pos_id: int) -> str:
        return _code_str(self.codes[pos_id], self.m)

    def rep_digits(self, pos_id: int) -> np.ndarray:
        return _code_digits(self.codes[pos_id], self.m)

    def representative(self, pos_id: int) -> Position:
        digits = self.rep_digits(pos_id)
        present = digits_mask((digits == DIGIT_PRESENT).astype(np.int64))
        asked = digits_mask((digits != DIGIT_UNKNOWN).astype(np.int64))
        return Position(self.n, present, asked)

    def lookup(self, p: Position) -> tuple[int, int]:
        """(PosId, minimising permutation index) of a labeled incomplete position."""
        if p.n != self.n:
            raise ValueError(f"position has n={p.n} but table has n={self.n}")
        if p.is_complete:
            raise ValueError("completed boards are graphs, not table positions")
        pt = perm_tables(self.n)
        code, k = _canonical_digits(p.digits().astype(np.int64), pt)
        return self.id_by_code[code], k


def _counts_by_level(tbl: PositionTable) -> dict[int, int]:
    out: dict[int, int] = {}
    for u in tbl.unknown_count:
        out[u] = out.get(u, 0) + 1
    return out


def _build_position_table(n: int, class_table: ClassTable | None = None) -> PositionTable:
    check_n(n)
    ct = class_table if class_table is not None else enumerate_classes(n)
    if ct.n != n:
        raise ValueError(f"class table has n={ct.n}, expected {n}")
    pt = perm_tables(n)
    m = pt.m

    initial = int((np.ones(m, dtype=np.int64) @ pt.pow3))
    raw_children: dict[int, list[tuple[int, int, int]]] = {}
    frontier = [initial]
    seen = {initial}
    while frontier:
        nxt: list[int] = []
        for code in frontier:
            digits = _code_digits(code, m)
            unknown = np.flatnonzero(digits == DIGIT_UNKNOWN)
            entries = []
            for e in unknown:
                pair = []
                for val in (DIGIT_ABSENT, DIGIT_PRESENT):
                    cd = digits.copy()
                    cd[e] = val
                    if len(unknown) == 1:
                        pair.append(ct.class_of(digits_mask((cd == DIGIT_PRESENT).astype(np.int64))))
                    else:
                        ccode, _ = _canonical_digits(cd, pt)
                        pair.append(ccode)
                        if ccode not in seen:
                            seen.add(ccode)
                            nxt.append(ccode)
                entries.append((int(e), pair[0], pair[1]))
            raw_children[code] = entries
        frontier = nxt

    def ucount(code: int) -> int:
        return int((_code_digits(code, m) == DIGIT_UNKNOWN).sum())

    ordered = sorted(raw_children, key=lambda c: (-ucount(c), c))
    id_by_code = {c: i for i, c in enumerate(ordered)}
    unknown_count = tuple(ucount(c) for c in ordered)

    children = []
    for c in ordered:
        entries = raw_children[c]
        if ucount(c) == 1:
            children.append(tuple(entries))
        else:
            children.append(tuple((e, id_by_code[a], id_by_code[b]) for e, a, b in entries))

    reachable = [0] * len(ordered)
    for i in range(len(ordered) - 1, -1, -1):
        e, a, b = children[i][0]  # lowest-index unknown edge
        if unknown_count[i] == 1:
            reachable[i] = (1 << a) | (1 << b)
        else:
            reachable[i] = reachable[a] | reachable[b]

    return PositionTable(
        n=n,
        m=m,
        class_table=ct,
        codes=tuple(ordered),
        unknown_count=unknown_count,
        children=tuple(children),
        reachable=tuple(reachable),
        id_by_code=id_by_code,
    )


@lru_cache(maxsize=None)
def build_position_table(n: int, class_table: ClassTable | None = None) -> PositionTable:
    """Expand and canonicalise the reachable position classes for K_n."""
    return _build_position_table(n, class_table)


def reachable_classes(pos_id: int, tbl: PositionTable) -> int:
    """ClassId bitmask of all completions of the position class."""
    return tbl.reachable[pos_id]


def _members_of(prop) -> int:
    return prop if isinstance(prop, int) else prop.members


def decided_for(pos_id: int, prop, tbl: PositionTable) -> str:
    """Verdict of a position class against a property (ClassId bitmask or Property)."""
    members = _members_of(prop)
    reach = tbl.reachable[pos_id]
    hit = reach & members
    if hit == reach:
        return VERDICT_IN
    if hit == 0:
        return VERDICT_OUT
    return VERDICT_UNDETERMINED


def labeled_verdict(p: Position, prop, tbl: PositionTable) -> str:
    """Verdict of a labeled position, handling fully answered boards."""
    members = _members_of(prop)
    if p.is_complete:
        cid = tbl.class_table.class_of(p.present)
        return VERDICT_IN if members >> cid & 1 else VERDICT_OUT
    pos_id, _ = tbl.lookup(p)
    return decided_for(pos_id, members, tbl)


@lru_cache(maxsize=None)
def position_complement_map(tbl_n: int) -> tuple[tuple[int, int], ...]:
    """Per PosId: (PosId of the complemented class, minimising permutation index).

    The permutation k satisfies rep(partner)[edge_maps[k, i]] = swap(rep(id))[i],
    which is what the solver needs to translate per-edge values.
    """
    tbl = build_position_table(tbl_n)
    pt = perm_tables(tbl_n)
    out = []
    for i in range(len(tbl)):
        digits = tbl.rep_digits(i)
        swapped = 2 - digits  # 0 <-> 2, unknown fixed
        code, k = _canonical_digits(swapped, pt)
        out.append((tbl.id_by_code[code], k))
    return tuple(out)
