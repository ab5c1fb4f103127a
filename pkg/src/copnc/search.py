"""Exhaustive and pruned search for odd partitions, triples, and sweeps.

The central object is a backtracking search for three pairwise compatible
normal odd partitions.  Compatibility at a cubic vertex forces the three
marked edges there to be three distinct edges, i.e. a bijection between
partitions and the vertex's slots, so a triple is encoded as one bijection
per vertex (6^n worst case instead of 27^n).  A vertex carrying a loop has
only two distinct incident edges and admits no bijection, so such graphs
are rejected in O(1).

While vertices get assigned, each partition's growing trail fragments are
tracked as chains of edges with open or sealed (marked) ends.  Pairing two
ends of the same chain would close a cycle and is pruned immediately;
completing a chain whose edge count is even is pruned as well.  A full
assignment that survives both prunes is exactly a compatible triple of
normal odd partitions.

Exploration order: next vertex with the most already-assigned neighbors
(ties to the lowest id), which closes chains early.  The first assigned
vertex keeps the identity bijection: the three partitions of a triple are
interchangeable, so every solution class is still found, once.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .graph import CubicGraph, bridges, has_perfect_matching, is_bipartite, perfect_matchings
from .partition import (
    CycleError,
    NormalPartition,
    associated_matching,
    is_odd,
    trails_from_marking,
    triple_set,
)
from .switching import CapExceeded

_PERMS = (
    (0, 1, 2),
    (0, 2, 1),
    (1, 0, 2),
    (1, 2, 0),
    (2, 0, 1),
    (2, 1, 0),
)


class EmptyIntersectionViolated(AssertionError):
    """Three matchings from a compatible triple met in an edge: a bug."""


def find_nop(g: CubicGraph) -> Optional[NormalPartition]:
    """A normal odd partition, or None when the graph has no perfect
    matching (the two are equivalent; the partition is built from the
    first matching found)."""
    from .construct import nop_from_matching

    m = next(perfect_matchings(g), None)
    if m is None:
        return None
    return nop_from_matching(g, m)


def enumerate_markings(g: CubicGraph) -> Iterator[tuple[int, ...]]:
    """All 3^n total markings, lexicographic by slot index."""
    slots = g.vertex_darts
    marking = [0] * g.n

    def rec(v: int) -> Iterator[tuple[int, ...]]:
        if v == g.n:
            yield tuple(marking)
            return
        for d in slots[v]:
            marking[v] = d
            yield from rec(v + 1)

    yield from rec(0)


def enumerate_nops(
    g: CubicGraph,
    cap: Optional[int] = None,
    conformal_to: Optional[frozenset[int]] = None,
) -> list[NormalPartition]:
    """All normal odd partitions, deduplicated, in canonical order.

    Walks every marking whose decode succeeds with all-odd trails.  With
    conformal_to set, keeps only partitions whose odd edges equal that
    matching.  Raises CapExceeded when more than cap markings would be
    scanned (the scan size is 3^n).
    """
    if cap is not None and 3**g.n > cap:
        raise CapExceeded(f"3^{g.n} markings exceed cap {cap}")
    out: dict[tuple, NormalPartition] = {}
    for marking in enumerate_markings(g):
        try:
            p = trails_from_marking(g, marking)
        except CycleError:
            continue
        if not is_odd(p):
            continue
        if conformal_to is not None and associated_matching(p) != conformal_to:
            continue
        out.setdefault(p.key, p)
    return [out[k] for k in sorted(out)]


def enumerate_normal_partitions(g: CubicGraph, cap: Optional[int] = None) -> list[NormalPartition]:
    """All normal partitions (odd or not), deduplicated canonically."""
    if cap is not None and 3**g.n > cap:
        raise CapExceeded(f"3^{g.n} markings exceed cap {cap}")
    out: dict[tuple, NormalPartition] = {}
    for marking in enumerate_markings(g):
        try:
            p = trails_from_marking(g, marking)
        except CycleError:
            continue
        out.setdefault(p.key, p)
    return [out[k] for k in sorted(out)]


class _TripleSearch:
    """Backtracking over per-vertex bijections with chain tracking.

    Chain state per partition, over darts:
      link[d]   -- for a chain-end dart d, the dart at the opposite end
      length[d] -- edge count of the chain, valid at end darts
      sealed[d] -- d is a marked (sealed) chain end
    Sealing and joining journal their writes so assignments undo in O(1).
    """

    def __init__(
        self,
        g: CubicGraph,
        length_cap: Optional[int] = None,
        fixed: Optional[dict[int, tuple[int, int, int]]] = None,
    ):
        self.g = g
        self.n = g.n
        nd = 2 * g.m
        self.link = [list(range(nd)) for _ in range(3)]
        self.length = [[1] * nd for _ in range(3)]
        self.sealed = [[False] * nd for _ in range(3)]
        for p in range(3):
            lk = self.link[p]
            for e in range(g.m):
                lk[2 * e] = 2 * e + 1
                lk[2 * e + 1] = 2 * e
        self.assigned = [False] * g.n
        self.order: list[int] = []
        self.trail: list[tuple] = []  # undo journal
        self.neighbors = [
            tuple(g.dart_vertex(d ^ 1) for d in g.vertex_darts[v]) for v in range(g.n)
        ]
        self.assigned_nbrs = [0] * g.n
        self.length_cap = length_cap
        self.fixed = dict(fixed) if fixed else {}
        self.nodes = 0

    # -- journaled chain ops -------------------------------------------

    def _seal(self, p: int, d: int) -> bool:
        sealed, link, length = self.sealed[p], self.link[p], self.length[p]
        self.trail.append((0, p, d))
        sealed[d] = True
        other = link[d]
        if sealed[other]:
            if length[d] % 2 == 0:
                return False
            if self.length_cap is not None and length[d] > self.length_cap:
                return False
        return True

    def _join(self, p: int, a: int, b: int) -> bool:
        link, length, sealed = self.link[p], self.length[p], self.sealed[p]
        if link[a] == b:
            return False  # closes a cycle
        x, y = link[a], link[b]
        total = length[a] + length[b]
        self.trail.append((1, p, x, link[x], length[x]))
        self.trail.append((1, p, y, link[y], length[y]))
        link[x] = y
        link[y] = x
        length[x] = total
        length[y] = total
        if self.length_cap is not None and total > self.length_cap:
            return False  # chains never shrink
        if sealed[x] and sealed[y] and total % 2 == 0:
            return False
        return True

    def _undo(self, mark: int) -> None:
        while len(self.trail) > mark:
            rec = self.trail.pop()
            if rec[0] == 0:
                _, p, d = rec
                self.sealed[p][d] = False
            else:
                _, p, d, lk, ln = rec
                self.link[p][d] = lk
                self.length[p][d] = ln

    # -- vertex assignment ----------------------------------------------

    def _apply(self, v: int, perm: tuple[int, int, int]) -> Optional[int]:
        """Assign v with the given partition->slot bijection; returns the
        journal mark on success, None on contradiction (already undone)."""
        mark = len(self.trail)
        slots = self.g.vertex_darts[v]
        for p in range(3):
            md = slots[perm[p]]
            oth = [slots[i] for i in range(3) if i != perm[p]]
            if not self._seal(p, md) or not self._join(p, oth[0], oth[1]):
                self._undo(mark)
                return None
        return mark

    def _next_vertex(self) -> int:
        best, score = -1, -1
        for v in range(self.n):
            if not self.assigned[v] and self.assigned_nbrs[v] > score:
                best, score = v, self.assigned_nbrs[v]
        return best

    def solutions(self) -> Iterator[tuple[tuple[int, ...], ...]]:
        """Yield solutions as three markings, identity bijection at the
        first vertex assigned (one representative per unordered triple)."""
        g = self.g
        if any(
            len(set(g.edges_at(v))) < 3 for v in range(g.n)
        ):  # a loop vertex cannot host three distinct marked edges
            return
        # pinned vertices come first; their bijections are forced
        base_depth = 0
        for v in sorted(self.fixed):
            slots = g.vertex_darts[v]
            darts = self.fixed[v]
            if sorted(darts) != sorted(set(darts)) or any(d not in slots for d in darts):
                return
            perm = tuple(slots.index(d) for d in darts)
            self.assigned[v] = True
            for w in self.neighbors[v]:
                self.assigned_nbrs[w] += 1
            if self._apply(v, perm) is None:
                return
            base_depth += 1

        def rec(depth: int) -> Iterator[tuple[tuple[int, ...], ...]]:
            if depth == self.n:
                markings = []
                for p in range(3):
                    marking = [0] * self.n
                    for v in range(self.n):
                        # recover the marked slot from the sealed table
                        for d in g.vertex_darts[v]:
                            if self.sealed[p][d]:
                                marking[v] = d
                                break
                    markings.append(tuple(marking))
                yield tuple(markings)
                return
            v = self._next_vertex()
            self.assigned[v] = True
            for w in self.neighbors[v]:
                self.assigned_nbrs[w] += 1
            perms = _PERMS if (depth > base_depth or self.fixed) else _PERMS[:1]
            for perm in perms:
                self.nodes += 1
                mark = self._apply(v, perm)
                if mark is None:
                    continue
                yield from rec(depth + 1)
                self._undo(mark)
            self.assigned[v] = False
            for w in self.neighbors[v]:
                self.assigned_nbrs[w] -= 1

        yield from rec(base_depth)


def enumerate_compatible_triples(
    g: CubicGraph,
    length_cap: Optional[int] = None,
    fixed: Optional[dict[int, tuple[int, int, int]]] = None,
) -> Iterator[tuple[NormalPartition, NormalPartition, NormalPartition]]:
    """All compatible triples of normal odd partitions, one representative
    per unordered triple, in deterministic search order.

    length_cap restricts trail lengths (3 decides all-length-3 existence).
    fixed pins the marked darts of chosen vertices, one dart per partition,
    turning the search into a constrained completion; pinned searches
    enumerate ordered triples since the pins already tell the three
    partitions apart.
    """
    searcher = _TripleSearch(g, length_cap, fixed)
    for markings in searcher.solutions():
        triple = tuple(trails_from_marking(g, mk) for mk in markings)
        yield triple  # type: ignore[misc]


def find_compatible_triple(
    g: CubicGraph,
) -> Optional[tuple[NormalPartition, NormalPartition, NormalPartition]]:
    """First compatible triple of normal odd partitions, or None after the
    full (pruned) space is exhausted."""
    return next(enumerate_compatible_triples(g), None)


def find_length3_triple(
    g: CubicGraph,
) -> Optional[tuple[NormalPartition, NormalPartition, NormalPartition]]:
    """First compatible triple whose partitions all have length 3, if any.

    All-length-3 odd partitions biject with (matching, orientation) pairs:
    the middle edges form a perfect matching and the end edges inherit a
    coherent orientation of the complementary 2-factor.  Enumerating those
    pairs is therefore exhaustive; the bijection is cross-checked against
    the generic search in the test suite.  Given two compatible members,
    the third's marks are forced (the remaining slot at every vertex), so
    pairs plus one dictionary lookup decide existence.
    """
    from .construct import nop_from_matching, two_factor_cycles

    if any(len(set(g.edges_at(v))) < 3 for v in range(g.n)):
        return None
    candidates: list[NormalPartition] = []
    seen = set()
    for m in perfect_matchings(g):
        cycles = two_factor_cycles(g, m)
        for bits in range(1 << len(cycles)):
            orient = tuple((bits >> i) & 1 for i in range(len(cycles)))
            p = nop_from_matching(g, m, orient)
            if p.key not in seen:
                seen.add(p.key)
                candidates.append(p)
    by_marking = {p.marked: p for p in candidates}
    slot_sum = [sum(g.vertex_darts[v]) for v in range(g.n)]
    for i, p1 in enumerate(candidates):
        for j in range(i + 1, len(candidates)):
            p2 = candidates[j]
            if any(
                p1.marked[v] >> 1 == p2.marked[v] >> 1 for v in range(g.n)
            ):
                continue
            forced = tuple(
                slot_sum[v] - p1.marked[v] - p2.marked[v] for v in range(g.n)
            )
            p3 = by_marking.get(forced)
            if p3 is not None:
                return (p1, p2, p3)
    return None


def fan_raspaud_witness(
    triple: Sequence[NormalPartition],
) -> tuple[frozenset[int], frozenset[int], frozenset[int]]:
    """The three associated matchings of a compatible odd triple; their
    triple intersection is empty (raising otherwise would flag a bug)."""
    p1, p2, p3 = triple
    if triple_set(p1, p2, p3):
        raise ValueError("triple is not pairwise compatible")
    m1, m2, m3 = (associated_matching(p) for p in triple)
    if m1 & m2 & m3:
        raise EmptyIntersectionViolated(sorted(m1 & m2 & m3))
    return m1, m2, m3


def complete_system(
    g: CubicGraph, k: int, cap: int = 10**6
) -> Optional[list[NormalPartition]]:
    """k normal odd partitions such that every vertex sees three of them
    marking three distinct edges, or None when no such system exists.

    At a cubic vertex three pairwise distinct marked edges must be all
    three incident edges, so the condition is: every slot edge of every
    vertex is marked by some member.  Tiny graphs only; the candidate pool
    is the full set of normal odd partitions.
    """
    if k < 3:
        raise ValueError("a complete system has order at least 3")
    if any(len(set(g.edges_at(v))) < 3 for v in range(g.n)):
        return None
    pool = enumerate_nops(g, cap=cap)
    need: list[frozenset[int]] = [frozenset(g.edges_at(v)) for v in range(g.n)]
    nodes = 0

    def covered(chosen: list[NormalPartition]) -> bool:
        for v in range(g.n):
            got = {p.marked_edge(v) for p in chosen}
            if not need[v] <= got:
                return False
        return True

    def rec(start: int, chosen: list[NormalPartition]) -> Optional[list[NormalPartition]]:
        nonlocal nodes
        nodes += 1
        if nodes > cap:
            raise CapExceeded(f"complete-system search exceeded {cap} nodes")
        if len(chosen) == k:
            return list(chosen) if covered(chosen) else None
        # prune: remaining picks must be able to finish the coverage
        remaining = k - len(chosen)
        for v in range(g.n):
            got = {p.marked_edge(v) for p in chosen}
            if len(need[v] - got) > remaining:
                return None
        for i in range(start, len(pool)):
            chosen.append(pool[i])
            hit = rec(i + 1, chosen)
            if hit is not None:
                return hit
            chosen.pop()
        return None

    return rec(0, [])


@dataclass
class SweepReport:
    """One record of a conjecture sweep over a graph corpus."""

    id: str
    n: int
    check: str
    bridgeless: Optional[bool] = None
    triple_found: Optional[bool] = None
    agree: Optional[bool] = None
    detail: dict = field(default_factory=dict)
    elapsed: float = 0.0

    def to_json(self) -> dict:
        out = {
            "schema": "copnc/1",
            "check": self.check,
            "id": self.id,
            "n": self.n,
            "elapsed": round(self.elapsed, 6),
        }
        if self.bridgeless is not None:
            out["bridgeless"] = self.bridgeless
        if self.triple_found is not None:
            out["triple_found"] = self.triple_found
        if self.agree is not None:
            out["agree"] = self.agree
        out.update(self.detail)
        return out


def check_graph(g: CubicGraph, which: str, gid: str = "?") -> SweepReport:
    """Run one conjecture check on one graph.

    conj25: every bridgeless cubic graph should admit a compatible triple;
            a bridgeless graph without one is a counterexample and gets
            reported (never raised).
    thm12:  an all-length-3 compatible triple exists iff the graph is
            bipartite.
    thm5:   a normal odd partition exists iff a perfect matching does.
    """
    from .certificates import certificate

    t0 = time.perf_counter()
    if which == "conj25":
        free = not bridges(g)
        triple = find_compatible_triple(g)
        rep = SweepReport(gid, g.n, which, bridgeless=free, triple_found=triple is not None)
        if triple is not None:
            rep.detail["certificate"] = certificate(g, list(triple))
        rep.agree = (not free) or triple is not None
        if free and triple is None:
            rep.detail["counterexample"] = True
    elif which == "thm12":
        bip, _ = is_bipartite(g)
        triple = find_length3_triple(g)
        rep = SweepReport(gid, g.n, which, triple_found=triple is not None)
        rep.detail["bipartite"] = bip
        rep.agree = bip == (triple is not None)
    elif which == "thm5":
        nop = find_nop(g)
        pm = has_perfect_matching(g)
        rep = SweepReport(gid, g.n, which)
        rep.detail["matching_exists"] = pm
        rep.detail["nop_exists"] = nop is not None
        rep.agree = pm == (nop is not None)
    else:
        raise ValueError(f"unknown check '{which}'")
    rep.elapsed = time.perf_counter() - t0
    return rep


def conjecture_sweep(
    corpus: Sequence[tuple[str, CubicGraph]], which: str
) -> Iterator[SweepReport]:
    """Sequential sweep; the command line layer adds the worker pool."""
    for gid, g in corpus:
        yield check_graph(g, which, gid)
