import pytest

from copnc.graph import CubicGraph, build_graph, generate


@pytest.fixture(scope="session")
def theta():
    return generate("theta")


@pytest.fixture(scope="session")
def k4():
    return generate("k4")


@pytest.fixture(scope="session")
def k33():
    return generate("k33")


@pytest.fixture(scope="session")
def prism():
    return generate("prism")


@pytest.fixture(scope="session")
def cube():
    return generate("cube")


@pytest.fixture(scope="session")
def petersen():
    return generate("petersen")


@pytest.fixture(scope="session")
def dumbbell():
    return build_graph(2, [(0, 0), (0, 1), (1, 1)])


@pytest.fixture(scope="session")
def loop_claw():
    # center joined to three loop-vertices: three bridges, no perfect matching
    return build_graph(4, [(0, 1), (0, 2), (0, 3), (1, 1), (2, 2), (3, 3)])


@pytest.fixture(scope="session")
def one_bridge():
    """Two K4 blocks, each with one subdivided edge, joined between the
    subdivision vertices: exactly one bridge (the joining edge, id 0)."""
    edges = [(4, 9)]
    # block A on 0..4 (4 subdivides the 0-1 edge of a K4 on 0..3)
    edges += [(0, 4), (1, 4), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    # block B on 5..9 (9 subdivides the 5-6 edge)
    edges += [(5, 9), (6, 9), (5, 7), (5, 8), (6, 7), (6, 8), (7, 8)]
    return build_graph(10, edges)


def brute_perfect_matchings(g: CubicGraph) -> set[frozenset[int]]:
    """Independent matching oracle: scan all edge subsets of the right size."""
    from itertools import combinations

    out = set()
    for comb in combinations(range(g.m), g.n // 2):
        covered = set()
        ok = True
        for e in comb:
            u, v = g.endpoints[e]
            if u == v or u in covered or v in covered:
                ok = False
                break
            covered.update((u, v))
        if ok and len(covered) == g.n:
            out.add(frozenset(comb))
    return out


def graph_automorphisms(g: CubicGraph):
    """All vertex automorphisms of a simple cubic graph (networkx VF2)."""
    import networkx as nx

    nxg = nx.Graph(list(g.endpoints))
    matcher = nx.algorithms.isomorphism.GraphMatcher(nxg, nxg)
    return [dict(m) for m in matcher.isomorphisms_iter()]
