import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from eskit.census import labeled_graphs
from eskit.coloring import chi_prime
from eskit.errors import EdgelessGraphError, PreconditionError
from eskit.families import complete, complete_bipartite, cycle, generate, path, petersen, two_hamiltonian
from eskit.graph import Graph, is_matching
from eskit.stability import (
    alpha_core_bound,
    all_min_mitigating_sets,
    bipartite_matching_transform,
    drops_to,
    es_exact,
    is_critical,
    is_mitigating,
    two_matching_transform,
    verify_matching_conjecture,
    vizing_adjacency_check,
)


def _random_bipartite(rng, a, b, p):
    return Graph(a + b, [(u, a + v) for u in range(a) for v in range(b) if rng.random() < p])


class TestEsExact:
    def test_every_graph_up_to_five_matches_oracle(self):
        for n in range(2, 6):
            for g in labeled_graphs(n):
                if not g.m:
                    continue
                report = es_exact(g)
                want = oracles.all_minimum_sets(n, g.edges)
                assert report.es == len(want[0]), g
                # witness is the lexicographically least minimum set
                assert report.witness == want[0]
                matchings = [s for s in want if oracles.is_matching(s)]
                assert report.matching_witness == (matchings[0] if matchings else None)

    def test_random_six_and_seven_vertex_graphs(self):
        rng = random.Random(2024)
        for _ in range(40):
            n = rng.choice((6, 7))
            g = Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.5])
            if g.m:
                assert es_exact(g).es == oracles.stability_index(n, g.edges), g

    @pytest.mark.parametrize(
        "spec,es",
        [("complete(5)", 2), ("cycle(6)", 3), ("cycle(7)", 1), ("petersen()", 2), ("complete(8)", 4),
         ("two_hamiltonian(7)", 2), ("complete_bipartite(3,4)", 3), ("path(7)", 3), ("path(2)", 1)],
    )
    def test_named_graphs(self, spec, es):
        assert es_exact(generate(spec)).es == es

    def test_petersen_matches_oracle(self):
        g = petersen()
        assert es_exact(g).es == oracles.stability_index(g.n, g.edges)

    def test_modes_agree_on_small_graphs(self):
        for g in labeled_graphs(5):
            if g.m:
                a, b = es_exact(g, "exact"), es_exact(g, "matching_only")
                assert a.es == b.es
                assert b.witness_is_matching and b.witness == a.matching_witness

    def test_non_matching_witness_reported(self):
        report = es_exact(two_hamiltonian(7))
        assert report.witness == ((0, 1), (0, 2)) and not report.witness_is_matching
        assert report.matching_witness is not None and is_matching(report.matching_witness)

    def test_report_json(self):
        data = json.loads(es_exact(complete(5)).to_json())
        assert set(data) == {"es", "witness", "witness_is_matching", "matching_witness", "mode", "subsets_tested"}
        assert data["es"] == 2 and data["mode"] == "exact"

    def test_bad_inputs(self):
        with pytest.raises(EdgelessGraphError):
            es_exact(Graph(4))
        with pytest.raises(ValueError):
            es_exact(cycle(4), "fast")

    def test_all_min_sets(self):
        sets = all_min_mitigating_sets(cycle(4))
        assert sets == oracles.all_minimum_sets(4, cycle(4).edges)
        assert sets == [((0, 1), (2, 3)), ((0, 3), (1, 2))]

    def test_conjecture_verdict(self):
        v = verify_matching_conjecture(two_hamiltonian(7))
        assert v.has_matching_min_witness and v.es == 2
        assert v.to_dict()["graph6"] == v.graph6


class TestPredicates:
    def test_drops_to(self):
        assert drops_to(cycle(5), [(0, 1)], 2)
        assert not drops_to(complete(4), [(0, 1)], 2)
        assert drops_to(path(2), [(0, 1)], 0)
        assert is_mitigating(cycle(4), [(0, 1), (2, 3)])

    def test_criticality(self):
        assert is_critical(cycle(5)) and is_critical(complete(5).without([(0, 1)]))
        assert not is_critical(complete(5))  # still overfull after losing one edge
        assert not is_critical(petersen())
        assert not is_critical(cycle(4))  # Class 1 inputs are never critical

    def test_adjacency_check(self):
        assert vizing_adjacency_check(complete(7).without([(0, 1), (2, 3)]))
        with pytest.raises(PreconditionError):
            vizing_adjacency_check(petersen())

    def test_core_bound(self):
        assert alpha_core_bound(petersen()) == 5
        assert alpha_core_bound(cycle(7)) == 3
        with pytest.raises(PreconditionError):
            alpha_core_bound(cycle(6))


class TestTwoMatchingTransform:
    def test_returns_mitigating_matching(self):
        g = two_hamiltonian(7)
        for s in all_min_mitigating_sets(g):
            out = two_matching_transform(g, s)
            assert len(out) == 2 and is_matching(out) and is_mitigating(g, out)

    def test_complete_five(self):
        g = complete(5)
        for s in all_min_mitigating_sets(g):
            out = two_matching_transform(g, s)
            assert is_matching(out) and is_mitigating(g, out)

    def test_matching_input_unchanged(self):
        assert two_matching_transform(complete(5), [(0, 1), (2, 3)]) == ((0, 1), (2, 3))

    @pytest.mark.parametrize(
        "g,s,msg",
        [(cycle(5), [(0, 1), (1, 2)], "index is 1"),
         (complete(5), [(0, 1)], "two distinct"),
         (complete(5), [(0, 1), (0, 9)], "two distinct"),
         (petersen(), [(0, 1), (0, 4)], "not a mitigating")],
    )
    def test_preconditions(self, g, s, msg):
        with pytest.raises(PreconditionError, match=msg):
            two_matching_transform(g, s)


class TestBipartiteTransform:
    def test_path_five(self):
        g = path(5)
        out = bipartite_matching_transform(g, [(1, 2), (2, 3)])
        assert len(out) == 2 and is_matching(out) and is_mitigating(g, out)

    def test_whole_edge_set(self):
        g = complete_bipartite(3, 3)
        out = bipartite_matching_transform(g, g.edges)
        assert is_matching(out) and is_mitigating(g, out) and len(out) <= 3

    @settings(max_examples=500, deadline=None)
    @given(st.randoms(use_true_random=False), st.integers(1, 5), st.integers(1, 5), st.data())
    def test_random_bipartite(self, rng, a, b, data):
        g = _random_bipartite(rng, a, b, rng.random())
        if not g.m:
            return
        chi = chi_prime(g).chi_prime
        # a random mitigating set: greedily remove edges until the index drops
        order = data.draw(st.permutations(g.edges))
        removed = []
        for e in order:
            removed.append(e)
            if drops_to(g, removed, chi - 1):
                break
        out = bipartite_matching_transform(g, removed)
        assert is_matching(out) and len(out) <= len(removed)
        assert drops_to(g, out, chi - 1)

    def test_preconditions(self):
        with pytest.raises(PreconditionError, match="bipartite"):
            bipartite_matching_transform(cycle(5), [(0, 1)])
        with pytest.raises(PreconditionError, match="mitigating"):
            bipartite_matching_transform(cycle(6), [(0, 1)])
        with pytest.raises(PreconditionError):
            bipartite_matching_transform(cycle(6), [])
