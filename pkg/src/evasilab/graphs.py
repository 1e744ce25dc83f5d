"""Labeled and unlabeled simple graphs on 2..6 vertices.

A labeled graph is an edge bitmask over a fixed lexicographic indexing of
the vertex pairs of K_n.  Canonical forms are computed by brute-force
minimisation over all n! vertex relabelings, which is exact and cheap at
this scale (at most 720 permutations over 15 edges).  Every downstream
artifact -- class ids, property files, strategy exports, the wire
protocol -- is pinned to the ascending canonical code order produced here.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

MIN_N = 2
MAX_N = 6


def num_edges(n: int) -> int:
    """Number of vertex pairs, C(n, 2)."""
    return n * (n - 1) // 2


def check_n(n: int) -> None:
    if not isinstance(n, int) or not MIN_N <= n <= MAX_N:
        raise ValueError(f"vertex count must be an integer in {MIN_N}..{MAX_N}, got {n!r}")


def edge_index(u: int, v: int, n: int) -> int:
    """Zero-based rank of the pair (u, v), 1 <= u < v <= n, in lexicographic order.

    (1,2) is 0, (1,3) is 1, ..., (n-1,n) is C(n,2)-1.
    """
    check_n(n)
    if not (1 <= u < v <= n):
        raise ValueError(f"edge must satisfy 1 <= u < v <= n, got ({u}, {v}) with n={n}")
    return (u - 1) * (2 * n - u) // 2 + (v - u - 1)


@lru_cache(maxsize=None)
def all_edges(n: int) -> tuple[tuple[int, int], ...]:
    """All vertex pairs of K_n in edge-index order."""
    check_n(n)
    return tuple((u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1))


def edge_endpoints(index: int, n: int) -> tuple[int, int]:
    """Inverse of edge_index."""
    edges = all_edges(n)
    if not 0 <= index < len(edges):
        raise ValueError(f"edge index {index} out of range for n={n}")
    return edges[index]


@dataclass(frozen=True)
class LabeledGraph:
    """A simple graph on vertices 1..n; bit i of `edges` is the edge with index i."""

    n: int
    edges: int = 0

    def __post_init__(self) -> None:
        check_n(self.n)
        if not 0 <= self.edges < 1 << num_edges(self.n):
            raise ValueError(f"edge mask {self.edges:#x} out of range for n={self.n}")

    @classmethod
    def from_edge_list(cls, n: int, pairs) -> "LabeledGraph":
        mask = 0
        for u, v in pairs:
            if u > v:
                u, v = v, u
            mask |= 1 << edge_index(u, v, n)
        return cls(n, mask)

    @classmethod
    def empty(cls, n: int) -> "LabeledGraph":
        return cls(n, 0)

    @classmethod
    def complete(cls, n: int) -> "LabeledGraph":
        return cls(n, (1 << num_edges(n)) - 1)

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return bool(self.edges >> edge_index(u, v, self.n) & 1)

    def edge_list(self) -> tuple[tuple[int, int], ...]:
        return tuple(e for i, e in enumerate(all_edges(self.n)) if self.edges >> i & 1)

    def edge_count(self) -> int:
        return self.edges.bit_count()


class PermTables:
    """Precomputed action of S_n on edge indices, shared by all canonicalisers.

    Permutations are enumerated in lexicographic order of their image tuples;
    ties in canonicalisation are always broken by taking the first minimiser
    in this order, so every recorded permutation is reproducible.
    """

    __slots__ = ("n", "m", "perms", "perm_index", "edge_maps", "inv_edge_maps", "pow2", "pow3")

    def __init__(self, n: int) -> None:
        check_n(n)
        self.n = n
        self.m = num_edges(n)
        self.perms = tuple(itertools.permutations(range(1, n + 1)))
        self.perm_index = {p: i for i, p in enumerate(self.perms)}
        edges = all_edges(n)
        nperm = len(self.perms)
        emap = np.empty((nperm, self.m), dtype=np.int64)
        for p, perm in enumerate(self.perms):
            for i, (u, v) in enumerate(edges):
                uu, vv = perm[u - 1], perm[v - 1]
                if uu > vv:
                    uu, vv = vv, uu
                emap[p, i] = edge_index(uu, vv, n)
        self.edge_maps = emap
        inv = np.empty_like(emap)
        rows = np.arange(nperm)[:, None]
        inv[rows, emap] = np.arange(self.m)[None, :]
        self.inv_edge_maps = inv
        # weights make digit strings compare like integers, edge 0 most significant
        self.pow2 = (1 << np.arange(self.m - 1, -1, -1)).astype(np.int64)
        self.pow3 = (3 ** np.arange(self.m - 1, -1, -1)).astype(np.int64)


@lru_cache(maxsize=None)
def perm_tables(n: int) -> PermTables:
    return PermTables(n)


def mask_digits(mask: int, m: int) -> np.ndarray:
    """Edge presence bits of a mask as an array indexed by edge index."""
    return (mask >> np.arange(m, dtype=np.int64)) & 1


def digits_mask(digits: np.ndarray) -> int:
    """Inverse of mask_digits."""
    return int((digits.astype(np.int64) << np.arange(len(digits), dtype=np.int64)).sum())


def code_int_to_mask(code: int, m: int) -> int:
    """Edge mask of the graph whose code string has value `code` (edge 0 = MSB)."""
    mask = 0
    for i in range(m):
        if code >> (m - 1 - i) & 1:
            mask |= 1 << i
    return mask


def permute_graph(g: LabeledGraph, perm: tuple[int, ...]) -> LabeledGraph:
    """Relabel vertices: vertex v becomes perm[v-1]."""
    pt = perm_tables(g.n)
    p = pt.perm_index[tuple(perm)]
    digits = mask_digits(g.edges, pt.m)
    permuted = digits[pt.inv_edge_maps[p]]
    return LabeledGraph(g.n, digits_mask(permuted))


def _canonical_code_int(g: LabeledGraph) -> int:
    pt = perm_tables(g.n)
    rows = mask_digits(g.edges, pt.m)[pt.inv_edge_maps]
    return int((rows @ pt.pow2).min())


def canonical_code(g: LabeledGraph) -> str:
    """Lexicographically minimal edge bit-string over all vertex relabelings."""
    return format(_canonical_code_int(g), f"0{num_edges(g.n)}b")


def complement_graph(g: LabeledGraph) -> LabeledGraph:
    """The graph whose edges are exactly the non-edges of g."""
    full = (1 << num_edges(g.n)) - 1
    return LabeledGraph(g.n, g.edges ^ full)


def aut_order(g: LabeledGraph) -> int:
    """Number of vertex permutations that fix the edge set of g."""
    pt = perm_tables(g.n)
    digits = mask_digits(g.edges, pt.m)
    codes = digits[pt.inv_edge_maps] @ pt.pow2
    return int((codes == digits @ pt.pow2).sum())


@dataclass(frozen=True, eq=False)
class ClassTable:
    """Isomorphism classes of n-vertex graphs, sorted by ascending canonical code.

    Class 0 is always the empty graph and the last class the complete graph.
    `masks` holds the canonical representative of each class as an edge mask;
    `class_of_mask` classifies every labeled mask in one lookup.
    """

    n: int
    m: int
    codes: tuple[str, ...]
    masks: tuple[int, ...]
    aut_order: tuple[int, ...]
    orbit_size: tuple[int, ...]
    complement_class: tuple[int, ...]
    class_of_mask: np.ndarray = field(repr=False)

    @property
    def num_classes(self) -> int:
        return len(self.codes)

    def __len__(self) -> int:
        return len(self.codes)

    def class_of(self, mask: int) -> int:
        return int(self.class_of_mask[mask])

    def representative(self, class_id: int) -> LabeledGraph:
        return LabeledGraph(self.n, self.masks[class_id])

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "classes": [
                {
                    "id": i,
                    "code": self.codes[i],
                    "edges": self.masks[i].bit_count(),
                    "aut_order": self.aut_order[i],
                    "orbit_size": self.orbit_size[i],
                    "complement_class": self.complement_class[i],
                }
                for i in range(len(self.codes))
            ],
        }


def _build_class_table(n: int) -> ClassTable:
    check_n(n)
    pt = perm_tables(n)
    m = pt.m
    total = 1 << m
    bits = ((np.arange(total, dtype=np.int64)[:, None] >> np.arange(m)) & 1).astype(np.int64)
    canon = np.full(total, np.iinfo(np.int64).max, dtype=np.int64)
    for p in range(len(pt.perms)):
        np.minimum(canon, bits[:, pt.inv_edge_maps[p]] @ pt.pow2, out=canon)
    uniq = np.unique(canon)  # sorted ascending = ClassId order
    class_of_mask = np.searchsorted(uniq, canon).astype(np.int16)

    codes = tuple(format(int(c), f"0{m}b") for c in uniq)
    masks = tuple(code_int_to_mask(int(c), m) for c in uniq)
    fact = 1
    for k in range(2, n + 1):
        fact *= k

    auts = []
    orbits = []
    comp = []
    full = total - 1
    for cid, mask in enumerate(masks):
        digits = mask_digits(mask, m)
        row_codes = digits[pt.inv_edge_maps] @ pt.pow2
        a = int((row_codes == int(uniq[cid])).sum())
        auts.append(a)
        orbits.append(fact // a)
        comp.append(int(class_of_mask[mask ^ full]))

    return ClassTable(
        n=n,
        m=m,
        codes=codes,
        masks=masks,
        aut_order=tuple(auts),
        orbit_size=tuple(orbits),
        complement_class=tuple(comp),
        class_of_mask=class_of_mask,
    )


@lru_cache(maxsize=None)
def enumerate_classes(n: int) -> ClassTable:
    """Canonicalise all 2^C(n,2) labeled graphs and tabulate the classes."""
    return _build_class_table(n)


def class_of(g: LabeledGraph, table: ClassTable) -> int:
    """ClassId of g in the given table."""
    if g.n != table.n:
        raise ValueError(f"graph has n={g.n} but table has n={table.n}")
    return table.class_of(g.edges)
