import pytest

from copnc.graph import perfect_matchings
from copnc.partition import (
    Trail,
    associated_matching,
    is_odd,
    stats,
    validate_normal,
)
from copnc.search import enumerate_nops
from copnc.switching import (
    BadBranch,
    CapExceeded,
    NotConformalInput,
    conformal_switch,
    odd_switches,
    partition_classes,
    reachable_class,
    switch,
    switch_candidates,
    switch_class,
)


class TestSwitch:
    def test_marked_delta_is_exactly_v(self, k4):
        for p in enumerate_nops(k4)[:10]:
            for v in range(4):
                for q in switch_candidates(p, v):
                    delta = [
                        u for u in range(4) if q.marked_edge(u) != p.marked_edge(u)
                    ]
                    assert delta == [v]

    def test_switch_then_inverse_restores(self, cube):
        p = enumerate_nops(cube)[0]
        for v in range(cube.n):
            t = p.trails[p.edge_pos[p.passage_edges(v)[0]][0]]
            for branch in set(t.ends) - {v}:
                q = switch(p, v, branch)
                back = [r for r in switch_candidates(q, v) if r == p]
                assert back, "switch must be reversible by a switch at v"

    def test_results_are_valid_partitions(self, petersen):
        p = enumerate_nops(petersen)[0]
        for v in range(petersen.n):
            for q in switch_candidates(p, v):
                assert not validate_normal(q.graph, q.trails) is None

    def test_theta_partial_reversal(self, theta):
        # single-trail partition; the switch on vertex 0 reverses the closed
        # part and re-ends the trail, worked out by following the rewrite
        p = validate_normal(theta, [Trail(theta, (0, 1, 0, 1), (0, 1, 2))])
        q = switch(p, 0, branch=1)
        assert q.trails[0] == Trail(theta, (0, 1, 0, 1), (1, 0, 2))

    def test_bad_branch(self, theta):
        p = validate_normal(theta, [Trail(theta, (0, 1, 0, 1), (0, 1, 2))])
        with pytest.raises(BadBranch):
            switch(p, 0, branch=0)

    def test_candidate_count_matches_trail_case(self, cube):
        # distinct trails at v give two branches, same trail exactly one
        p = enumerate_nops(cube)[0]
        for v in range(cube.n):
            e = p.passage_edges(v)[0]
            ti = p.edge_pos[e][0]
            same = v in p.trails[ti].ends
            assert len(switch_candidates(p, v)) == (1 if same else 2)


class TestOddSwitches:
    def test_results_all_odd_and_balanced(self, k33):
        for p in enumerate_nops(k33)[:20]:
            for v in range(k33.n):
                for q in odd_switches(p, v):
                    assert is_odd(q)
                    assert stats(q).balance() == 0

    def test_filter_semantics(self, petersen):
        p = enumerate_nops(petersen)[0]
        for v in range(petersen.n):
            odd = odd_switches(p, v)
            assert odd == [q for q in switch_candidates(p, v) if is_odd(q)]

    def test_k33_counts_against_direct_decode(self, k33):
        """Independent route: re-mark each vertex slot by hand, decode, and
        filter for oddness; on the all-length-3 triple member every vertex
        admits exactly one odd switch."""
        from copnc.construct import bipartite_triple
        from copnc.partition import CycleError, trails_from_marking

        p = bipartite_triple(k33).partitions[0]
        for v in range(6):
            direct = []
            for d in k33.vertex_darts[v]:
                if d == p.marked[v]:
                    continue
                marking = list(p.marked)
                marking[v] = d
                try:
                    q = trails_from_marking(k33, marking)
                except CycleError:
                    continue
                if is_odd(q):
                    direct.append(q)
            got = odd_switches(p, v)
            assert len(got) == len(direct) == 1
            assert got[0] == direct[0]

    def test_dumbbell_loop_switch_is_identity(self, dumbbell):
        p = enumerate_nops(dumbbell)[0]
        for v in range(2):
            for q in switch_candidates(p, v):
                assert q == p  # re-marking the other loop dart changes nothing


class TestConformalSwitch:
    def test_preserves_matching_and_unique(self, cube):
        m = next(perfect_matchings(cube))
        pool = enumerate_nops(cube, conformal_to=m)
        for p in pool[:12]:
            for v in range(cube.n):
                q = conformal_switch(p, m, v)
                if q is not None:
                    assert associated_matching(q) == m
                    assert q.marked_edge(v) != p.marked_edge(v)

    def test_blocked_pattern_returns_none(self, theta):
        # on the three-edge graph every conformal switch is blocked: the
        # vertex is internal and an end of the single trail
        m = frozenset({1})
        for p in enumerate_nops(theta, conformal_to=m):
            assert conformal_switch(p, m, 0) is None
            assert conformal_switch(p, m, 1) is None

    def test_rejects_nonconformal_input(self, cube):
        ms = list(perfect_matchings(cube))
        p = enumerate_nops(cube, conformal_to=ms[0])[0]
        with pytest.raises(NotConformalInput):
            conformal_switch(p, ms[1], 0)

    def test_at_most_one_candidate_qualifies(self, cube, petersen):
        from copnc.partition import associated_matching

        for g in (cube, petersen):
            for p in enumerate_nops(g)[:8]:
                m = associated_matching(p)
                for v in range(g.n):
                    winners = [
                        q
                        for q in switch_candidates(p, v)
                        if is_odd(q) and associated_matching(q) == m
                    ]
                    assert len(winners) <= 1


class TestClasses:
    def test_theta_conformal_two_singletons(self, theta):
        m = frozenset({0})
        pool = enumerate_nops(theta, conformal_to=m)
        classes = partition_classes(pool, "conformal", m)
        assert sorted(len(c) for c in classes) == [1, 1]

    def test_k4_odd_single_class(self, k4):
        pool = enumerate_nops(k4)
        classes = partition_classes(pool, "odd")
        assert len(classes) == 1
        assert len(classes[0]) == len(pool)

    def test_k33_conformal_single_class_per_matching(self, k33):
        for m in perfect_matchings(k33):
            pool = enumerate_nops(k33, conformal_to=m)
            classes = partition_classes(pool, "conformal", m)
            assert len(classes) == 1

    def test_summary_diameter(self, theta):
        pool = enumerate_nops(theta)
        summary, members = switch_class(pool[0], "odd")
        assert summary.size == len(members) == 6
        assert summary.diameter_exact
        assert summary.diameter >= 1

    def test_cap(self, petersen):
        p = enumerate_nops(petersen)[0]
        with pytest.raises(CapExceeded):
            reachable_class(p, "odd", cap=5)
