import pytest

from copnc.construct import (
    NoMatching,
    NotBipartite,
    NotThreeEdgeColorable,
    bipartite_triple,
    conformal_triple,
    conformal_triple_general,
    digon_contract,
    digon_extend,
    find_digon,
    find_triangle,
    nop_from_matching,
    triangle_contract,
    triangle_extend,
    two_factor_cycles,
)
from copnc.graph import build_graph, color_classes, generate, perfect_matchings, proper_3_edge_coloring
from copnc.partition import associated_matching, is_conformal, length_profile


class TestMatchingRoute:
    def test_petersen_five_trails_of_length_three(self, petersen):
        for m in perfect_matchings(petersen):
            p = nop_from_matching(petersen, m)
            assert length_profile(p) == (3, 3, 3, 3, 3)
            assert is_conformal(p, m)

    def test_theta_single_trail(self, theta):
        p = nop_from_matching(theta, frozenset({0}))
        assert length_profile(p) == (3,)

    def test_orientation_reversal_gives_second_partition(self, petersen):
        m = next(perfect_matchings(petersen))
        cycles = two_factor_cycles(petersen, m)
        p0 = nop_from_matching(petersen, m)
        flipped = tuple(1 if i == 0 else 0 for i in range(len(cycles)))
        p1 = nop_from_matching(petersen, m, flipped)
        assert p0 != p1
        assert is_conformal(p1, m)

    def test_convenience_form_raises_without_matching(self, loop_claw):
        with pytest.raises(NoMatching):
            nop_from_matching(loop_claw)

    def test_dumbbell_loops_in_two_factor(self, dumbbell):
        p = nop_from_matching(dumbbell, frozenset({1}))
        assert length_profile(p) == (3,)

    def test_orientation_map_degrees(self, petersen):
        from copnc.construct import orientation_map
        from copnc.graph import perfect_matchings

        m = next(perfect_matchings(petersen))
        out = orientation_map(petersen, m)
        heads = [petersen.dart_vertex(d ^ 1) for d in out]
        for v in range(petersen.n):
            assert petersen.dart_vertex(out[v]) == v
            assert (out[v] >> 1) not in m
        assert sorted(heads) == list(range(petersen.n))  # one incoming each


class TestBipartiteRoute:
    def test_k33(self, k33):
        t = bipartite_triple(k33)
        assert all(length_profile(p) == (3, 3, 3) for p in t.partitions)
        assert t.agreement() == frozenset()

    def test_cube_four_trails_each(self, cube):
        t = bipartite_triple(cube)
        assert all(length_profile(p) == (3, 3, 3, 3) for p in t.partitions)

    def test_k4_not_bipartite(self, k4):
        with pytest.raises(NotBipartite):
            bipartite_triple(k4)

    def test_every_edge_internal_exactly_once(self, cube):
        from copnc.partition import edge_role_audit

        t = bipartite_triple(cube)
        report = edge_role_audit(*t.partitions)
        assert all(roles.count("internal") == 1 for roles in report.values())

    def test_conformal_to_middle_colors(self, k33):
        t = bipartite_triple(k33)
        classes = color_classes(t.coloring)
        for c, p in enumerate(t.partitions):
            assert associated_matching(p) == classes[c]

    def test_works_on_bipartite_multigraphs(self, theta):
        t = bipartite_triple(theta)
        t.validate()
        assert all(length_profile(p) == (3,) for p in t.partitions)


class TestConformalRoute:
    def test_cube_reaches_empty_agreement(self, cube):
        t = conformal_triple(cube)
        assert t.agreement() == frozenset()
        t.validate()

    def test_k33_agrees_with_bipartite_in_validity(self, k33):
        t = conformal_triple(k33)
        t.validate()

    def test_petersen_uncolorable(self, petersen):
        with pytest.raises(NotThreeEdgeColorable):
            conformal_triple(petersen)


class TestDigonSurgery:
    def test_theta_extension_validates(self, theta):
        t = conformal_triple_general(theta)
        g2, t2 = digon_extend(theta, 0, t)
        assert g2.n == 4
        t2.validate()

    def test_extension_then_contraction_restores_graph(self, k33):
        # the merged edge comes back with the last id, so compare edge
        # multisets rather than id-for-id
        t = conformal_triple_general(k33)
        g2, t2 = digon_extend(k33, 0, t)
        digon = find_digon(g2)
        gs, cols, info = digon_contract(g2, t2.coloring, digon)
        assert gs.n == k33.n
        assert sorted(map(sorted, gs.endpoints)) == sorted(map(sorted, k33.endpoints))
        assert sorted(zip(map(tuple, map(sorted, gs.endpoints)), cols)) == sorted(
            zip(map(tuple, map(sorted, k33.endpoints)), t.coloring)
        )

    def test_every_edge_color_role(self, cube):
        t = conformal_triple_general(cube)
        for e in range(cube.m):
            g2, t2 = digon_extend(cube, e, t)
            t2.validate()


class TestTriangleSurgery:
    def test_k33_expansion(self, k33):
        t = conformal_triple_general(k33)
        g2, t2 = triangle_extend(k33, 0, t)
        assert g2.n == 8
        t2.validate()

    def test_expand_then_contract_restores(self, k33):
        t = conformal_triple_general(k33)
        g2, t2 = triangle_extend(k33, 2, t)
        tri = find_triangle(g2)
        gs, cols, info = triangle_contract(g2, t2.coloring, tri)
        assert gs == k33
        assert cols == t.coloring

    def test_every_vertex(self, cube):
        t = conformal_triple_general(cube)
        for v in range(cube.n):
            g2, t2 = triangle_extend(cube, v, t)
            t2.validate()

    def test_vertex_with_parallel_edges(self, theta):
        t = conformal_triple_general(theta)
        g2, t2 = triangle_extend(theta, 0, t)
        t2.validate()
        g3, t3 = digon_extend(g2, 3, t2)
        t3.validate()
        assert g3.n == 6


class TestGeneralRoute:
    @pytest.mark.parametrize("name", ["theta", "k4", "prism", "k33", "cube"])
    def test_small_graphs(self, name):
        g = generate(name)
        t = conformal_triple_general(g)
        t.validate()
        assert t.graph == g

    def test_flower5_rejected(self):
        with pytest.raises(NotThreeEdgeColorable):
            conformal_triple_general(generate("flower", 5))

    def test_multigraph_with_digons(self):
        # 4-cycle with two opposite doubled sides
        g = build_graph(4, [(0, 1), (0, 1), (1, 2), (2, 3), (2, 3), (0, 3)])
        t = conformal_triple_general(g)
        t.validate()

    def test_matches_original_coloring(self, prism):
        col = proper_3_edge_coloring(prism)
        t = conformal_triple_general(prism)
        assert t.coloring == col

    def test_deterministic(self, cube):
        t1 = conformal_triple_general(cube)
        t2 = conformal_triple_general(cube)
        assert [p.key for p in t1.partitions] == [p.key for p in t2.partitions]
