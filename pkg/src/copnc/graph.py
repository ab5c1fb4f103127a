"""Cubic multigraph core: representation, generators, formats, classic subroutines.

Graphs here are cubic (every vertex has degree exactly 3) and may contain
loops and parallel edges.  Because parallel edges are first-class citizens,
every edge carries a dense integer id and all higher-level structures
reference edges by id, never by endpoint pair.

Conventions:
  * Vertices are 0..n-1, edges are 0..m-1 in construction order.
  * Each edge e owns two *darts* (edge-ends) 2*e and 2*e+1.  Dart 2*e sits
    at the first endpoint, 2*e+1 at the second.  A loop at v owns both of
    its darts at v.  The mate of dart d is d ^ 1.
  * Every vertex owns exactly 3 darts ("slots"), listed in increasing
    order, so slot order is fixed by edge id.

Graphs are immutable after construction and safe to share between threads.
"""

from __future__ import annotations

from typing import Iterator, Optional, Sequence

RED, BLUE, YELLOW = 0, 1, 2
COLOR_NAMES = ("red", "blue", "yellow")


class NonCubic(ValueError):
    """Some vertex does not have degree exactly 3 (loops counted twice)."""

    def __init__(self, vertex: int, degree: int):
        self.vertex = vertex
        self.degree = degree
        super().__init__(f"vertex {vertex} has degree {degree}, expected 3")


class Malformed(ValueError):
    """Unparseable graph input (graph6 or edge-list text)."""


class BadParameter(ValueError):
    """Unknown family name or invalid family parameter."""


class CubicGraph:
    """An immutable cubic multigraph with identity-bearing edges."""

    __slots__ = ("n", "m", "endpoints", "vertex_darts", "_dart_vertex")

    def __init__(self, n: int, endpoints: Sequence[tuple[int, int]]):
        endpoints = tuple((int(u), int(v)) for u, v in endpoints)
        dart_vertex = []
        slots: list[list[int]] = [[] for _ in range(n)]
        for e, (u, v) in enumerate(endpoints):
            if not (0 <= u < n and 0 <= v < n):
                raise Malformed(f"edge {e} endpoint out of range: ({u}, {v})")
            slots[u].append(2 * e)
            slots[v].append(2 * e + 1)
            dart_vertex.append(u)
            dart_vertex.append(v)
        for v in range(n):
            if len(slots[v]) != 3:
                raise NonCubic(v, len(slots[v]))
        self.n = n
        self.m = len(endpoints)
        self.endpoints = endpoints
        self.vertex_darts = tuple(tuple(s) for s in slots)
        self._dart_vertex = tuple(dart_vertex)

    # -- dart helpers ---------------------------------------------------

    def dart_vertex(self, d: int) -> int:
        """Vertex carrying dart d."""
        return self._dart_vertex[d]

    def edge_of(self, d: int) -> int:
        return d >> 1

    def mate(self, d: int) -> int:
        """The dart at the other end of d's edge."""
        return d ^ 1

    def edges_at(self, v: int) -> tuple[int, int, int]:
        """Edge ids incident to v; a loop appears twice."""
        a, b, c = self.vertex_darts[v]
        return (a >> 1, b >> 1, c >> 1)

    def edge_ids_at(self, v: int) -> tuple[int, ...]:
        """Distinct edge ids incident to v (2 if v carries a loop)."""
        return tuple(sorted(set(self.edges_at(v))))

    def is_loop(self, e: int) -> bool:
        u, v = self.endpoints[e]
        return u == v

    def other_end(self, e: int, v: int) -> int:
        u, w = self.endpoints[e]
        return w if u == v else u

    def has_loop(self) -> bool:
        return any(u == v for u, v in self.endpoints)

    def neighbors(self, v: int) -> tuple[int, ...]:
        """Neighbors with multiplicity, following slot order; loops yield v."""
        return tuple(self.dart_vertex(d ^ 1) for d in self.vertex_darts[v])

    # -- value semantics ------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CubicGraph)
            and self.n == other.n
            and self.endpoints == other.endpoints
        )

    def __hash__(self) -> int:
        return hash((self.n, self.endpoints))

    def __repr__(self) -> str:
        return f"CubicGraph(n={self.n}, m={self.m})"


def build_graph(n: int, endpoints: Sequence[tuple[int, int]]) -> CubicGraph:
    """Build a cubic multigraph; raises NonCubic if any degree differs from 3."""
    return CubicGraph(n, endpoints)


# ---------------------------------------------------------------------------
# graph6 (simple graphs only) and plain edge-list text (multigraphs)
# ---------------------------------------------------------------------------


def parse_graph6(line: str) -> CubicGraph:
    """Parse one graph6 line into a cubic graph.

    graph6 encodes simple graphs only; multigraphs travel as edge-list text
    (see parse_edge_list).  Edges come out in lexicographic pair order,
    which is the column-major order of the upper triangle used by graph6.
    """
    s = line.strip()
    if s.startswith(">>graph6<<"):
        s = s[10:]
    if not s:
        raise Malformed("empty graph6 line")
    data = [ord(c) - 63 for c in s]
    if any(b < 0 or b > 63 for b in data):
        raise Malformed("graph6 characters out of range")
    if data[0] == 63:
        if len(data) < 4:
            raise Malformed("truncated graph6 size field")
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        body = data[4:]
    else:
        n = data[0]
        body = data[1:]
    need = (n * (n - 1) // 2 + 5) // 6
    if len(body) < need:
        raise Malformed(f"graph6 body too short for n={n}")
    bits = []
    for b in body[:need]:
        bits.extend((b >> k) & 1 for k in range(5, -1, -1))
    edges = []
    i = 0
    for v in range(1, n):
        for u in range(v):
            if bits[i]:
                edges.append((u, v))
            i += 1
    edges.sort()  # edge ids in lexicographic pair order, not column-major
    return CubicGraph(n, edges)


def to_graph6(g: CubicGraph) -> str:
    """Encode a simple graph as one graph6 line; raises Malformed on multigraphs."""
    seen = set()
    adj = [[False] * g.n for _ in range(g.n)]
    for u, v in g.endpoints:
        if u == v or (min(u, v), max(u, v)) in seen:
            raise Malformed("graph6 cannot encode loops or parallel edges")
        seen.add((min(u, v), max(u, v)))
        adj[u][v] = adj[v][u] = True
    if g.n > 62:
        raise Malformed("graph6 encoder limited to n <= 62")
    bits = []
    for v in range(1, g.n):
        for u in range(v):
            bits.append(1 if adj[u][v] else 0)
    while len(bits) % 6:
        bits.append(0)
    out = [chr(g.n + 63)]
    for i in range(0, len(bits), 6):
        b = 0
        for k in range(6):
            b = (b << 1) | bits[i + k]
        out.append(chr(b + 63))
    return "".join(out)


def parse_edge_list(text: str) -> list[CubicGraph]:
    """Parse edge-list text: records of a "n m" header followed by m "u v" lines.

    A file may hold several records back to back.  Blank lines and lines
    starting with '#' are ignored.
    """
    tokens: list[str] = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            tokens.extend(line.split())
    if len(tokens) % 2:
        raise Malformed("odd token count in edge-list text")
    pairs = [
        (tokens[i], tokens[i + 1]) for i in range(0, len(tokens), 2)
    ]
    graphs = []
    i = 0
    while i < len(pairs):
        try:
            n, m = int(pairs[i][0]), int(pairs[i][1])
        except ValueError as exc:
            raise Malformed(f"bad header near record {len(graphs)}") from exc
        i += 1
        if m > len(pairs) - i:
            raise Malformed("edge-list record truncated")
        edges = []
        for u, v in pairs[i : i + m]:
            try:
                edges.append((int(u), int(v)))
            except ValueError as exc:
                raise Malformed(f"bad edge line '{u} {v}'") from exc
        i += m
        graphs.append(CubicGraph(n, edges))
    if not graphs:
        raise Malformed("no records in edge-list text")
    return graphs


def to_edge_list(g: CubicGraph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.endpoints)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Generators.  Vertex numbering is fixed and documented so that edge ids and
# certificates are reproducible byte for byte.
# ---------------------------------------------------------------------------


def _theta() -> CubicGraph:
    # two vertices joined by three parallel edges
    return CubicGraph(2, [(0, 1), (0, 1), (0, 1)])


def _k4() -> CubicGraph:
    return CubicGraph(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])


def _k33() -> CubicGraph:
    # parts {0,1,2} and {3,4,5}, edges in lexicographic order
    return CubicGraph(6, [(u, v) for u in range(3) for v in range(3, 6)])


def _prism() -> CubicGraph:
    # triangles 0-1-2 and 3-4-5, rungs i -- i+3
    edges = [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (0, 3), (1, 4), (2, 5)]
    return CubicGraph(6, edges)


def _cube() -> CubicGraph:
    # vertices are 3-bit strings, edges flip one bit
    edges = []
    for v in range(8):
        for k in range(3):
            u = v ^ (1 << k)
            if v < u:
                edges.append((v, u))
    return CubicGraph(8, edges)


def _petersen() -> CubicGraph:
    # outer cycle 0..4, spokes i -- 5+i, inner pentagram 5+i -- 5+((i+2) mod 5)
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(i, 5 + i) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return CubicGraph(10, edges)


def _flower(k: int) -> CubicGraph:
    """Flower graph on 4k vertices (snark for odd k >= 5, Tietze's graph at k=3).

    Numbering: u_i -> i-1, v_i -> k+i-1, w_i -> 2k+i-1, t_i -> 3k+i-1 for
    1 <= i <= k.  Edge order: the k-cycle u_1..u_k, then the 2k-cycle
    w_1..w_k t_1..t_k, then per i the spokes v_i u_i, v_i w_i, v_i t_i.
    """
    if k < 3 or k % 2 == 0:
        raise BadParameter(f"flower parameter must be odd and >= 3, got {k}")
    u = lambda i: i - 1
    v = lambda i: k + i - 1
    w = lambda i: 2 * k + i - 1
    t = lambda i: 3 * k + i - 1
    edges = [(u(i), u(i % k + 1)) for i in range(1, k + 1)]
    edges += [(w(i), w(i + 1)) for i in range(1, k)]
    edges.append((w(k), t(1)))
    edges += [(t(i), t(i + 1)) for i in range(1, k)]
    edges.append((t(k), w(1)))
    for i in range(1, k + 1):
        edges += [(v(i), u(i)), (v(i), w(i)), (v(i), t(i))]
    return CubicGraph(4 * k, edges)


def _goldberg(k: int) -> CubicGraph:
    """Goldberg graph on 8k vertices (snark for odd k >= 3).

    Block j (0 <= j < k) holds vertices b(j,i) = 8j + i - 1 for roles
    i = 1..8: an inner pentagon 1-2-3-4-5, a hub vertex 6 on 1, outer
    vertices 7 on 2 and 8 on 5, and the outer chord 7-8.  Blocks are
    chained by the hub cycle 6_j -- 6_{j+1} and the two interleaving
    cycles 4_j -- 3_{j+1} and 7_j -- 8_{j+1} (indices mod k).  The full
    adjacency is spelled out in the README and is gated by the snark
    validation tests (bridgeless, chromatic index four).

    Edge order: per block the nine internal edges
    (1,2),(2,3),(3,4),(4,5),(5,1),(1,6),(2,7),(5,8),(7,8), then per block
    the three chaining edges (6_j,6_{j+1}),(4_j,3_{j+1}),(7_j,8_{j+1}).
    """
    if k < 3 or k % 2 == 0:
        raise BadParameter(f"goldberg parameter must be odd and >= 3, got {k}")
    b = lambda j, i: 8 * (j % k) + i - 1
    edges = []
    for j in range(k):
        edges += [
            (b(j, 1), b(j, 2)),
            (b(j, 2), b(j, 3)),
            (b(j, 3), b(j, 4)),
            (b(j, 4), b(j, 5)),
            (b(j, 5), b(j, 1)),
            (b(j, 1), b(j, 6)),
            (b(j, 2), b(j, 7)),
            (b(j, 5), b(j, 8)),
            (b(j, 7), b(j, 8)),
        ]
    for j in range(k):
        edges += [
            (b(j, 6), b(j + 1, 6)),
            (b(j, 4), b(j + 1, 3)),
            (b(j, 7), b(j + 1, 8)),
        ]
    return CubicGraph(8 * k, edges)


_FAMILIES = {
    "theta": (_theta, False),
    "k4": (_k4, False),
    "k33": (_k33, False),
    "prism": (_prism, False),
    "cube": (_cube, False),
    "petersen": (_petersen, False),
    "flower": (_flower, True),
    "goldberg": (_goldberg, True),
}


def generate(family: str, k: Optional[int] = None) -> CubicGraph:
    """Build a named graph; flower and goldberg take an odd parameter k >= 3."""
    try:
        fn, takes_k = _FAMILIES[family]
    except KeyError:
        raise BadParameter(f"unknown family '{family}'") from None
    if takes_k:
        if k is None:
            raise BadParameter(f"family '{family}' needs a parameter")
        return fn(k)
    if k is not None:
        raise BadParameter(f"family '{family}' takes no parameter")
    return fn()


# ---------------------------------------------------------------------------
# Classic subroutines
# ---------------------------------------------------------------------------


def is_bipartite(g: CubicGraph) -> tuple[bool, Optional[tuple[int, ...]]]:
    """BFS 2-coloring; returns (True, side per vertex) or (False, None).

    Loops and odd cycles make the graph non bipartite.
    """
    side: list[int] = [-1] * g.n
    for s in range(g.n):
        if side[s] >= 0:
            continue
        side[s] = 0
        queue = [s]
        while queue:
            v = queue.pop()
            for d in g.vertex_darts[v]:
                w = g.dart_vertex(d ^ 1)
                if side[w] < 0:
                    side[w] = side[v] ^ 1
                    queue.append(w)
                elif side[w] == side[v]:
                    return False, None
    return True, tuple(side)


def bridges(g: CubicGraph) -> frozenset[int]:
    """Edge ids of all cut edges, by DFS lowpoint.

    The tree edge into each vertex is skipped exactly once *by id*, so a
    parallel copy of it still acts as a back edge and a digon is never a
    bridge.  Loops are never bridges.
    """
    import sys

    if g.n + 10 > sys.getrecursionlimit():
        sys.setrecursionlimit(g.n + 100)
    disc = [-1] * g.n
    low = [0] * g.n
    out: set[int] = set()
    timer = 0

    def dfs(v: int, pe: int) -> None:
        nonlocal timer
        disc[v] = low[v] = timer
        timer += 1
        skipped = False
        for d in g.vertex_darts[v]:
            e = d >> 1
            w = g.dart_vertex(d ^ 1)
            if w == v:
                continue
            if e == pe and not skipped:
                skipped = True
                continue
            if disc[w] < 0:
                dfs(w, e)
                if low[w] < low[v]:
                    low[v] = low[w]
                if low[w] > disc[v]:
                    out.add(e)
            elif disc[w] < low[v]:
                low[v] = disc[w]

    for s in range(g.n):
        if disc[s] < 0:
            dfs(s, -1)
    return frozenset(out)


def is_bridgeless(g: CubicGraph) -> bool:
    return not bridges(g)


def is_connected(g: CubicGraph) -> bool:
    if g.n == 0:
        return True
    seen = [False] * g.n
    seen[0] = True
    queue = [0]
    while queue:
        v = queue.pop()
        for d in g.vertex_darts[v]:
            w = g.dart_vertex(d ^ 1)
            if not seen[w]:
                seen[w] = True
                queue.append(w)
    return all(seen)


def perfect_matchings(g: CubicGraph) -> Iterator[frozenset[int]]:
    """Enumerate all perfect matchings by backtracking, lowest vertex first.

    Loops never belong to a matching.  The sequence is empty exactly when
    no perfect matching exists.  Deterministic: edges are tried in id order.
    """
    matched = [False] * g.n
    chosen: list[int] = []

    def next_vertex() -> int:
        for v in range(g.n):
            if not matched[v]:
                return v
        return -1

    def rec() -> Iterator[frozenset[int]]:
        v = next_vertex()
        if v < 0:
            yield frozenset(chosen)
            return
        for d in g.vertex_darts[v]:
            e = d >> 1
            if g.is_loop(e):
                continue
            w = g.other_end(e, v)
            if matched[w]:
                continue
            matched[v] = matched[w] = True
            chosen.append(e)
            yield from rec()
            chosen.pop()
            matched[v] = matched[w] = False

    return rec()


def has_perfect_matching(g: CubicGraph) -> bool:
    return next(perfect_matchings(g), None) is not None


def proper_3_edge_coloring(g: CubicGraph) -> Optional[tuple[int, ...]]:
    """First proper 3-edge-coloring in deterministic search order, or None.

    Colors are RED, BLUE, YELLOW = 0, 1, 2.  A graph with a loop has no
    proper edge coloring.  The search colors one edge at a time, always
    picking a most-constrained uncolored edge next, which exhausts quickly
    on the snark families used here.
    """
    if g.has_loop():
        return None
    m = g.m
    color = [-1] * m
    used = [0] * g.n  # bitmask of colors present at each vertex

    def pick() -> int:
        best, best_free = -1, 4
        for e in range(m):
            if color[e] >= 0:
                continue
            u, v = g.endpoints[e]
            free = bin(~(used[u] | used[v]) & 7).count("1")
            if free == 0:
                return e
            if free < best_free:
                best, best_free = e, free
                if free == 1:
                    return e
        return best

    def rec() -> bool:
        e = pick()
        if e < 0:
            return True
        u, v = g.endpoints[e]
        avail = ~(used[u] | used[v]) & 7
        if not avail:
            return False
        for c in (RED, BLUE, YELLOW):
            bit = 1 << c
            if avail & bit:
                color[e] = c
                used[u] |= bit
                used[v] |= bit
                if rec():
                    return True
                color[e] = -1
                used[u] &= ~bit
                used[v] &= ~bit
        return False

    if m == 0:
        return ()
    # break color symmetry: edge 0 is RED and the smallest other edge at its
    # first endpoint is BLUE; any proper coloring permutes into this form
    u0, w0 = g.endpoints[0]
    color[0] = RED
    used[u0] |= 1 << RED
    used[w0] |= 1 << RED
    e1 = min(e for e in g.edges_at(u0) if e != 0)
    u, v = g.endpoints[e1]
    color[e1] = BLUE
    used[u] |= 1 << BLUE
    used[v] |= 1 << BLUE
    if rec():
        return tuple(color)
    return None


def chromatic_index(g: CubicGraph) -> int:
    """3 if a proper 3-edge-coloring exists, else 4."""
    return 3 if proper_3_edge_coloring(g) is not None else 4


def color_classes(coloring: Sequence[int]) -> tuple[frozenset[int], frozenset[int], frozenset[int]]:
    """Split an edge coloring into its three color classes."""
    out: list[set[int]] = [set(), set(), set()]
    for e, c in enumerate(coloring):
        out[c].add(e)
    return tuple(frozenset(s) for s in out)  # type: ignore[return-value]
