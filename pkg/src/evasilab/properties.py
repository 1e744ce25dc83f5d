"""Graph properties: class-id bitmasks with parsing and structural predicates.

A property of n-vertex graphs is an arbitrary set of isomorphism classes,
stored as a bitmask over the ClassIds of the ambient class table.  The two
trivial properties are the empty set and the full set.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache

import networkx as nx

from .graphs import (
    ClassTable,
    LabeledGraph,
    all_edges,
    check_n,
    edge_index,
    enumerate_classes,
)

BUILTIN_NAMES = (
    "complete",
    "connected",
    "triangle-free",
    "planar",
    "perfect",
    "has-isolated-vertex",
)

EVEN = "even"
ODD = "odd"


@dataclass(frozen=True)
class Property:
    """Membership bitmask over the ClassIds of the class table for n."""

    n: int
    members: int

    def __post_init__(self) -> None:
        check_n(self.n)
        k = enumerate_classes(self.n).num_classes
        if not 0 <= self.members < 1 << k:
            raise ValueError(f"membership mask {self.members:#x} out of range for n={self.n}")

    @classmethod
    def from_class_ids(cls, n: int, ids) -> "Property":
        k = enumerate_classes(n).num_classes
        mask = 0
        for c in ids:
            if not 0 <= c < k:
                raise ValueError(f"class id {c} out of range 0..{k - 1} for n={n}")
            mask |= 1 << c
        return cls(n, mask)

    @classmethod
    def empty(cls, n: int) -> "Property":
        return cls(n, 0)

    @classmethod
    def full(cls, n: int) -> "Property":
        return cls(n, (1 << enumerate_classes(n).num_classes) - 1)

    @property
    def size(self) -> int:
        return self.members.bit_count()

    @property
    def is_trivial(self) -> bool:
        return self.members == 0 or self.members == (1 << enumerate_classes(self.n).num_classes) - 1

    def contains(self, class_id: int) -> bool:
        return bool(self.members >> class_id & 1)

    def class_ids(self) -> tuple[int, ...]:
        k = enumerate_classes(self.n).num_classes
        return tuple(c for c in range(k) if self.members >> c & 1)


def parse_property(doc: dict) -> Property:
    """Build a Property from a JSON document.

    The document needs "n" plus "graphs" (list of edge lists, each edge a
    [u, v] pair), "classes" (list of ClassIds), or both; the two forms are
    unioned and duplicates are tolerated.
    """
    if not isinstance(doc, dict):
        raise ValueError("property document must be a JSON object")
    if "n" not in doc:
        raise ValueError('property document is missing "n"')
    n = doc["n"]
    check_n(n)
    if "graphs" not in doc and "classes" not in doc:
        raise ValueError('property document needs "graphs" and/or "classes"')
    table = enumerate_classes(n)
    mask = 0
    for pairs in doc.get("graphs", ()):
        edge_mask = 0
        for pair in pairs:
            if not (isinstance(pair, (list, tuple)) and len(pair) == 2):
                raise ValueError(f"edge must be a [u, v] pair, got {pair!r}")
            u, v = pair
            if not (isinstance(u, int) and isinstance(v, int)):
                raise ValueError(f"edge endpoints must be integers, got {pair!r}")
            if u > v:
                u, v = v, u
            if u == v:
                raise ValueError(f"edge endpoints must differ, got {pair!r}")
            if not (1 <= u and v <= n):
                raise ValueError(f"vertex out of range 1..{n} in edge {pair!r}")
            edge_mask |= 1 << edge_index(u, v, n)
        mask |= 1 << table.class_of(edge_mask)
    for c in doc.get("classes", ()):
        if not (isinstance(c, int) and 0 <= c < table.num_classes):
            raise ValueError(f"class id {c!r} out of range 0..{table.num_classes - 1} for n={n}")
        mask |= 1 << c
    return Property(n, mask)


def _degrees(mask: int, n: int) -> list[int]:
    deg = [0] * (n + 1)
    for i, (u, v) in enumerate(all_edges(n)):
        if mask >> i & 1:
            deg[u] += 1
            deg[v] += 1
    return deg[1:]


def _is_connected(mask: int, n: int) -> bool:
    adj = {v: set() for v in range(1, n + 1)}
    for i, (u, v) in enumerate(all_edges(n)):
        if mask >> i & 1:
            adj[u].add(v)
            adj[v].add(u)
    seen = {1}
    stack = [1]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n


def _has_triangle(mask: int, n: int) -> bool:
    g = LabeledGraph(n, mask)
    for a, b, c in itertools.combinations(range(1, n + 1), 3):
        if g.has_edge(a, b) and g.has_edge(a, c) and g.has_edge(b, c):
            return True
    return False


def _is_planar(mask: int, n: int) -> bool:
    g = nx.Graph()
    g.add_nodes_from(range(1, n + 1))
    g.add_edges_from(LabeledGraph(n, mask).edge_list())
    ok, _ = nx.check_planarity(g)
    return ok


def _has_induced_five_cycle(mask: int, n: int) -> bool:
    g = LabeledGraph(n, mask)
    for sub in itertools.combinations(range(1, n + 1), 5):
        # induced subgraph is a 5-cycle iff every chosen vertex has degree 2 in it
        if all(sum(g.has_edge(a, b) for b in sub if b != a) == 2 for a in sub):
            return True
    return False


@lru_cache(maxsize=None)
def builtin(name: str, n: int) -> Property:
    """One of the named stock properties, computed per class on the representatives."""
    check_n(n)
    if name not in BUILTIN_NAMES:
        raise ValueError(f"unknown builtin {name!r}; choose from {BUILTIN_NAMES}")
    if name == "perfect" and n > 5:
        raise ValueError("the perfect builtin is defined for n <= 5 only")
    table = enumerate_classes(n)
    full = (1 << table.m) - 1
    checks = {
        "complete": lambda mask: mask == full,
        "connected": lambda mask: _is_connected(mask, n),
        "triangle-free": lambda mask: not _has_triangle(mask, n),
        "planar": lambda mask: _is_planar(mask, n),
        "perfect": lambda mask: not _has_induced_five_cycle(mask, n),
        "has-isolated-vertex": lambda mask: 0 in _degrees(mask, n),
    }
    test = checks[name]
    members = 0
    for cid, mask in enumerate(table.masks):
        if test(mask):
            members |= 1 << cid
    return Property(n, members)


def set_complement(prop: Property) -> Property:
    """All classes not in the property."""
    full = (1 << enumerate_classes(prop.n).num_classes) - 1
    return Property(prop.n, prop.members ^ full)


def graph_complement_image(prop: Property) -> Property:
    """Image of the membership set under graph complementation of classes."""
    table = enumerate_classes(prop.n)
    members = 0
    for c in range(table.num_classes):
        if prop.members >> c & 1:
            members |= 1 << table.complement_class[c]
    return Property(prop.n, members)


def is_complement_closed(prop: Property) -> bool:
    return graph_complement_image(prop).members == prop.members


@dataclass(frozen=True)
class ClassOrder:
    """Spanning-subgraph order on classes: A <= B iff some relabeling of A embeds in B."""

    n: int
    up: tuple[int, ...]  # up[c] = bitmask of classes that contain c as a subgraph

    def leq(self, a: int, b: int) -> bool:
        return bool(self.up[a] >> b & 1)


@lru_cache(maxsize=None)
def class_order(table: ClassTable) -> ClassOrder:
    """Compute the subgraph order by brute force over one side's relabelings."""
    k = table.num_classes
    # orbit of each class: every labeled mask with that class id
    orbits: list[list[int]] = [[] for _ in range(k)]
    for mask in range(1 << table.m):
        orbits[table.class_of(mask)].append(mask)
    up = [0] * k
    for a in range(k):
        for b in range(k):
            if any(mask & ~table.masks[b] == 0 for mask in orbits[a]):
                up[a] |= 1 << b
    return ClassOrder(table.n, tuple(up))


def is_monotone(prop: Property, order: ClassOrder) -> bool:
    """True iff membership is closed under adding edges."""
    if order.n != prop.n:
        raise ValueError("order and property disagree on n")
    for c in range(enumerate_classes(prop.n).num_classes):
        if prop.members >> c & 1 and order.up[c] & ~prop.members:
            return False
    return True


def monotone_closure(prop: Property, order: ClassOrder) -> Property:
    members = 0
    for c in range(enumerate_classes(prop.n).num_classes):
        if prop.members >> c & 1:
            members |= order.up[c]
    return Property(prop.n, members)


def random_monotone(seed: int, n: int, max_retries: int = 64) -> Property:
    """Seed-deterministic nontrivial monotone property: upward closure of a few random classes."""
    table = enumerate_classes(n)
    order = class_order(table)
    rng = random.Random(f"monotone:{n}:{seed}")
    full = (1 << table.num_classes) - 1
    for _ in range(max_retries):
        gens = rng.sample(range(table.num_classes), rng.randint(1, 3))
        closed = monotone_closure(Property.from_class_ids(n, gens), order)
        if closed.members not in (0, full):
            return closed
    raise RuntimeError(f"could not sample a nontrivial monotone property for seed {seed}")


def labeled_parity(prop: Property, table: ClassTable) -> str:
    """Parity of the number of labeled graphs having the property."""
    total = 0
    for c in range(table.num_classes):
        if prop.members >> c & 1:
            total += table.orbit_size[c]
    return ODD if total & 1 else EVEN
