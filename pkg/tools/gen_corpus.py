#!/usr/bin/env python3
"""Generate the embedded corpora of connected cubic multigraphs.

Outputs (under src/copnc/data/):
  corpus_all_n{02,04,06,08,10}.edges  -- every connected cubic multigraph
                                         (loops and parallel edges allowed)
                                         on n vertices, one per class, in
                                         canonical form and order
  corpus_simple_n12.g6                -- every connected simple cubic graph
                                         on 12 vertices
  corpus_manifest.json                -- class counts and checksums

Generation is closure-based: every connected cubic multigraph on n >= 4
vertices arises from a cubic multigraph on n-2 vertices (with at most two
components) by one of
  (a) subdividing two edges (possibly the same one) and joining the two
      new vertices, or
  (b) subdividing one edge and attaching a pendant loop vertex,
because the reverse moves (cut through an adjacent vertex pair / remove a
pendant loop and smooth) always land in that source set.  Completeness is
nevertheless *verified*, not assumed: for each n the identity

    sum over classes of n! / |Aut|  ==  number of labeled graphs

is checked against an independent degree-sequence count, and for n <= 6 the
classes are cross-checked against brute-force enumeration over all labeled
graphs with brute-force isomorphism.

Run from the repository root:  python3 tools/gen_corpus.py
"""

from __future__ import annotations

import json
import sys
import time
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb, factorial
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "src" / "copnc" / "data"

Edge = tuple[int, int]
Graph = tuple[int, tuple[Edge, ...]]  # (n, sorted edge tuple, loops as (v, v))


def normalized(n: int, edges) -> Graph:
    return (n, tuple(sorted(tuple(sorted(e)) for e in edges)))


def degrees(g: Graph) -> list[int]:
    n, edges = g
    d = [0] * n
    for u, v in edges:
        d[u] += 1
        d[v] += 1
    return d


def is_connected(g: Graph) -> bool:
    n, edges = g
    if n == 0:
        return True
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = [False] * n
    seen[0] = True
    stack = [0]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if not seen[w]:
                seen[w] = True
                stack.append(w)
    return all(seen)


def is_simple(g: Graph) -> bool:
    n, edges = g
    return len(set(edges)) == len(edges) and all(u != v for u, v in edges)


# ---------------------------------------------------------------------------
# Canonical form with automorphism count (refinement + individualization)
# ---------------------------------------------------------------------------


def _adj_struct(g: Graph):
    n, edges = g
    loops = [0] * n
    mult: list[dict[int, int]] = [dict() for _ in range(n)]
    for u, v in edges:
        if u == v:
            loops[u] += 1
        else:
            mult[u][v] = mult[u].get(v, 0) + 1
            mult[v][u] = mult[v].get(u, 0) + 1
    return loops, mult


def _refine(n: int, loops, mult, colors):
    while True:
        sig = [
            (
                colors[v],
                loops[v],
                tuple(sorted((colors[w], m) for w, m in mult[v].items())),
            )
            for v in range(n)
        ]
        order = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [order[s] for s in sig]
        if new == colors:
            return new
        colors = new


def canonical(g: Graph) -> tuple[Graph, int]:
    """Canonical form of g and the order of its automorphism group.

    Explores all labelings consistent with iterated neighborhood
    refinement; the maximal labeled form is canonical and the number of
    leaf labelings attaining it equals |Aut|.
    """
    n, _ = g
    loops, mult = _adj_struct(g)
    best: list = [None]
    count = [0]

    def leaf_signature(perm):
        # perm[v] = new label of v
        lab_edges = []
        for v in range(n):
            if loops[v]:
                lab_edges.extend([(perm[v], perm[v])] * loops[v])
            for w, m in mult[v].items():
                if perm[v] < perm[w]:
                    lab_edges.extend([(perm[v], perm[w])] * m)
        return tuple(sorted(lab_edges))

    def descend(colors):
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        target = None
        for c in sorted(cells):
            if len(cells[c]) > 1:
                target = cells[c]
                break
        if target is None:
            perm = [0] * n
            for v in range(n):
                perm[v] = colors[v]
            sig = leaf_signature(perm)
            if best[0] is None or sig > best[0]:
                best[0] = sig
                count[0] = 1
            elif sig == best[0]:
                count[0] += 1
            return
        pivot = max(colors) + 1
        for v in target:
            nxt = list(colors)
            nxt[v] = pivot
            descend(_refine(n, loops, mult, nxt))

    descend(_refine(n, loops, mult, [0] * n))
    return (n, best[0]), count[0]


def brute_canonical(g: Graph) -> Graph:
    """All-permutations canonical form; oracle for small n."""
    from itertools import permutations

    n, edges = g
    best = None
    for perm in permutations(range(n)):
        sig = tuple(sorted(tuple(sorted((perm[u], perm[v]))) for u, v in edges))
        if best is None or sig > best:
            best = sig
    return (n, best)


# ---------------------------------------------------------------------------
# Labeled counts (independent of the generator): degree-sequence recursion
# ---------------------------------------------------------------------------


def _distributions(groups: tuple[tuple[int, int], ...], ends: int, simple: bool):
    """Yield (ways, new_group_counter_updates) for distributing `ends`
    indistinct edge-ends of one vertex among groups of later vertices,
    where groups is a tuple of (remaining_degree, how_many_vertices).

    Ways counts distinct assignments to *distinguishable* vertices; each
    vertex of remaining degree r accepts a multiplicity 0..r (0..1 when
    simple).  Returns an iterator of (ways, tuple of (old_r, mult) pairs
    aggregated)."""

    def per_group(idx, remaining, acc_ways, acc_updates):
        if idx == len(groups):
            if remaining == 0:
                yield acc_ways, tuple(acc_updates)
            return
        r, cnt = groups[idx]
        maxm = 1 if simple else r
        # multiplicities multiset over cnt distinguishable vertices
        def comps(slots_left, mult_floor, used, ways, updates):
            spent = sum(m * c for m, c in used)
            if spent > remaining:
                return
            if slots_left == 0 or mult_floor > maxm:
                if spent <= remaining:
                    yield spent, ways, updates
                return
            # choose how many vertices of this group take multiplicity mult_floor
            for c in range(slots_left + 1):
                w = ways * comb(slots_left, c)
                yield from comps(
                    slots_left - c,
                    mult_floor + 1,
                    used + [(mult_floor, c)] if c else used,
                    w,
                    updates + [(r, mult_floor, c)] if c else updates,
                )

        for spent, ways, updates in comps(cnt, 1, [], 1, []):
            yield from per_group(
                idx + 1, remaining - spent, acc_ways * ways, acc_updates + updates
            )

    yield from per_group(0, ends, 1, [])


@lru_cache(maxsize=None)
def _labeled_count(state: tuple[int, ...], simple: bool) -> int:
    """Number of labeled (multi)graphs on vertices with the given remaining
    degree sequence (a sorted tuple), every vertex to be saturated."""
    state = tuple(x for x in state if x > 0)
    if not state:
        return 1
    d = state[0]
    rest = state[1:]
    groups_counter: dict[int, int] = {}
    for r in rest:
        groups_counter[r] = groups_counter.get(r, 0) + 1
    groups = tuple(sorted(groups_counter.items()))
    total = 0
    max_loops = 0 if simple else d // 2
    for l in range(max_loops + 1):
        ends = d - 2 * l
        for ways, updates in _distributions(groups, ends, simple):
            cnt = dict(groups_counter)
            for r, m, c in updates:
                cnt[r] -= c
                cnt[r - m] = cnt.get(r - m, 0) + c
            new_state = []
            for r, c in cnt.items():
                new_state.extend([r] * c)
            total += ways * _labeled_count(tuple(sorted(new_state)), simple)
    return total


def labeled_cubic(n: int, simple: bool) -> int:
    return _labeled_count((3,) * n, simple)


def labeled_connected_cubic(n: int, simple: bool) -> int:
    """Connected labeled count via the standard component convolution."""

    @lru_cache(maxsize=None)
    def conn(k: int) -> int:
        if k == 0:
            return 0
        total = labeled_cubic(k, simple)
        for j in range(2, k, 2):
            total -= comb(k - 1, j - 1) * conn(j) * labeled_cubic(k - j, simple)
        return total

    return conn(n)


# ---------------------------------------------------------------------------
# Closure generation
# ---------------------------------------------------------------------------


def insert_pair(g: Graph, e1: int, e2: int) -> Graph:
    n, edges = g
    x, y = n, n + 1
    new = [e for i, e in enumerate(edges) if i not in (e1, e2)]
    if e1 == e2:
        a, b = edges[e1]
        new += [(a, x), (x, y), (x, y), (y, b)]
    else:
        a1, b1 = edges[e1]
        a2, b2 = edges[e2]
        new += [(a1, x), (x, b1), (a2, y), (y, b2), (x, y)]
    return normalized(n + 2, new)


def insert_loop(g: Graph, e: int) -> Graph:
    n, edges = g
    x, w = n, n + 1
    a, b = edges[e]
    new = [ed for i, ed in enumerate(edges) if i != e]
    new += [(a, x), (x, b), (x, w), (w, w)]
    return normalized(n + 2, new)


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    n1, e1 = g1
    n2, e2 = g2
    return normalized(n1 + n2, list(e1) + [(u + n1, v + n1) for u, v in e2])


def seed_n2() -> list[Graph]:
    theta = normalized(2, [(0, 1)] * 3)
    dumbbell = normalized(2, [(0, 0), (0, 1), (1, 1)])
    return [theta, dumbbell]


def generate_level(
    conn: dict[int, list[Graph]], n: int, simple_only: bool
) -> list[tuple[Graph, int]]:
    """All connected classes on n vertices from the closure, with |Aut|."""
    sources: list[Graph] = list(conn[n - 2])
    for a in range(2, n - 2, 2):
        b = n - 2 - a
        if a > b:
            break
        if a == b:
            pairs = list(combinations_with_replacement(conn[a], 2))
        else:
            pairs = [(g1, g2) for g1 in conn[a] for g2 in conn[b]]
        sources.extend(disjoint_union(g1, g2) for g1, g2 in pairs)
    out: dict[Graph, int] = {}
    for g in sources:
        m = len(g[1])
        has_loop = any(u == v for u, v in g[1])
        if simple_only and has_loop:
            continue
        for i in range(m):
            for j in range(i, m):
                cand = insert_pair(g, i, j)
                if simple_only and not is_simple(cand):
                    continue
                if not is_connected(cand):
                    continue
                key, aut = canonical(cand)
                if key not in out:
                    out[key] = aut
        if not simple_only:
            for i in range(m):
                cand = insert_loop(g, i)
                if not is_connected(cand):
                    continue
                key, aut = canonical(cand)
                if key not in out:
                    out[key] = aut
    return sorted(out.items())


def brute_classes(n: int) -> set[Graph]:
    """All connected classes by labeled enumeration; oracle for n <= 6."""

    def all_labeled(n):
        # recursively saturate the lowest vertex with remaining degree
        def rec(rem, edges):
            try:
                v = next(i for i in range(n) if rem[i] > 0)
            except StopIteration:
                yield tuple(edges)
                return
            # loop at v
            if rem[v] >= 2:
                rem[v] -= 2
                yield from rec(rem, edges + [(v, v)])
                rem[v] += 2
            for w in range(v + 1, n):
                if rem[w] > 0:
                    rem[v] -= 1
                    rem[w] -= 1
                    yield from rec(rem, edges + [(v, w)])
                    rem[v] += 1
                    rem[w] += 1

        seen = set()
        for edges in rec([3] * n, []):
            seen.add(normalized(n, edges))
        return seen

    return {
        brute_canonical(g)
        for g in all_labeled(n)
        if is_connected(g)
    }


def main() -> int:
    DATA.mkdir(parents=True, exist_ok=True)
    conn: dict[int, list[Graph]] = {}
    auts: dict[int, list[int]] = {}
    manifest: dict = {"schema": "copnc/1", "counts": {}}

    t0 = time.time()
    pairs2 = [(canonical(g)) for g in seed_n2()]
    conn[2] = [k for k, _ in sorted(pairs2)]
    auts[2] = [a for _, a in sorted(pairs2)]
    levels = [(4, False), (6, False), (8, False), (10, False), (12, True)]
    for n, simple_only in [(2, False)] + levels:
        if n > 2:
            items = generate_level(conn, n, simple_only)
            conn[n] = [g for g, _ in items]
            auts[n] = [a for _, a in items]
        label = "simple" if simple_only else "multi"
        mass = sum(factorial(n) // a for a in auts[n])
        expect = labeled_connected_cubic(n, simple_only)
        ok = mass == expect
        simple_classes = sum(1 for g in conn[n] if is_simple(g))
        print(
            f"n={n:2d} ({label}): classes={len(conn[n]):5d} simple={simple_classes:4d} "
            f"mass={mass} expected={expect} {'OK' if ok else 'MISMATCH'} "
            f"[{time.time()-t0:.1f}s]"
        )
        if not ok:
            print("completeness mass check FAILED", file=sys.stderr)
            return 1
        if n <= 6 and not simple_only:
            brute = brute_classes(n)
            mine = {brute_canonical(g) for g in conn[n]}
            if brute != mine:
                print(f"brute-force cross-check FAILED at n={n}", file=sys.stderr)
                return 1
            print(f"        brute-force cross-check OK ({len(brute)} classes)")
        manifest["counts"][str(n)] = {
            "classes": len(conn[n]),
            "simple": simple_classes,
            "labeled_connected": expect,
        }

    # write the multigraph corpora
    for n in (2, 4, 6, 8, 10):
        lines = []
        for g in conn[n]:
            nn, edges = g
            lines.append(f"{nn} {len(edges)}")
            lines.extend(f"{u} {v}" for u, v in edges)
        path = DATA / f"corpus_all_n{n:02d}.edges"
        path.write_text("\n".join(lines) + "\n")
        print("wrote", path.name)

    # write the simple n=12 corpus in graph6
    sys.path.insert(0, str(ROOT / "src"))
    from copnc.graph import CubicGraph, to_graph6

    g6lines = []
    for g in conn[12]:
        nn, edges = g
        g6lines.append(to_graph6(CubicGraph(nn, edges)))
    path = DATA / "corpus_simple_n12.g6"
    path.write_text("\n".join(g6lines) + "\n")
    print("wrote", path.name)

    (DATA / "corpus_manifest.json").write_text(
        json.dumps(manifest, indent=1, sort_keys=True) + "\n"
    )
    print("wrote corpus_manifest.json")
    print(f"total {time.time()-t0:.1f}s")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
