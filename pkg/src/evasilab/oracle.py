"""Reference game evaluator used to audit the table-based solver.

Works directly on raw labeled positions: no canonical position table, no
memoisation, no numpy.  Decidedness is tracked by carrying the explicit
lists of completions on each side of the property, which shrink as edges
are answered.  Exponential, but exact, and fast enough for n <= 4 where it
is used to cross-check every property.

The only contact with the main code path is the *definition* of a class
code (lexicographically minimal edge bit-string); the codes themselves are
recomputed here from scratch.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations


def _pair_rank(u: int, v: int, n: int) -> int:
    return (u - 1) * (2 * n - u) // 2 + (v - u - 1)


@lru_cache(maxsize=None)
def brute_class_codes(n: int) -> tuple[str, ...]:
    """Canonical code of every labeled edge mask, recomputed independently."""
    edges = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    m = len(edges)
    maps = []
    for perm in permutations(range(1, n + 1)):
        maps.append(tuple(_pair_rank(*sorted((perm[u - 1], perm[v - 1])), n) for u, v in edges))
    codes = []
    for mask in range(1 << m):
        best = None
        for emap in maps:
            bits = ["0"] * m
            for i in range(m):
                if mask >> i & 1:
                    bits[emap[i]] = "1"
            s = "".join(bits)
            if best is None or s < best:
                best = s
        codes.append(best)
    return tuple(codes)


def solve_depth_bruteforce(n: int, member_codes: frozenset[str] | set[str]) -> int:
    """Worst-case question count from the opening position, by plain recursion.

    `member_codes` is the property given as a set of canonical code
    strings.  The recursion branches over every unknown edge and both
    answers, pruning an edge only once its value provably cannot beat the
    current best; returned values are exact.
    """
    codes = brute_class_codes(n)
    m = n * (n - 1) // 2
    ins = [mask for mask in range(1 << m) if codes[mask] in member_codes]
    outs = [mask for mask in range(1 << m) if codes[mask] not in member_codes]

    def rec(ins: list[int], outs: list[int], unknown: tuple[int, ...]) -> int:
        if not ins or not outs:
            return 0
        best = len(unknown)  # asking everything always decides
        for i, e in enumerate(unknown):
            bit = 1 << e
            rest = unknown[:i] + unknown[i + 1:]
            ins_a = [g for g in ins if not g & bit]
            outs_a = [g for g in outs if not g & bit]
            d_absent = rec(ins_a, outs_a, rest)
            if 1 + d_absent >= best:
                continue  # this edge cannot improve on best
            ins_p = [g for g in ins if g & bit]
            outs_p = [g for g in outs if g & bit]
            d_present = rec(ins_p, outs_p, rest)
            value = 1 + max(d_absent, d_present)
            if value < best:
                best = value
                if best == 1:
                    break
        return best

    return rec(ins, outs, tuple(range(m)))


def count_positions_by_orbit(n: int, colors: int) -> int:
    """Orbit count of edge colorings of K_n under vertex relabeling (group averaging)."""
    edges = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    m = len(edges)
    total = 0
    count = 0
    for perm in permutations(range(1, n + 1)):
        emap = [_pair_rank(*sorted((perm[u - 1], perm[v - 1])), n) for u, v in edges]
        seen = [False] * m
        cycles = 0
        for start in range(m):
            if seen[start]:
                continue
            cycles += 1
            j = start
            while not seen[j]:
                seen[j] = True
                j = emap[j]
        total += colors ** cycles
        count += 1
    assert total % count == 0
    return total // count
