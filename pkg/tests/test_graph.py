import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eskit.census import canonical_form, certificate, graph_classes, graphs_up_to, labeled_graphs
from eskit.errors import FamilySpecError, GraphFormatError
from eskit.families import (
    FamilySpec,
    comp_matchings_plus_claw,
    complete,
    cycle,
    generate,
    hamiltonian_cycles,
    parse_family,
    petersen,
    two_hamiltonian,
)
from eskit.graph import (
    Graph,
    bipartition,
    complement,
    components,
    core,
    disjoint_union,
    encode_graph6,
    enumerate_matchings,
    format_edge_list,
    is_connected,
    is_matching,
    matching_number,
    parse_edge_list,
    parse_edge_spec,
    parse_graph6,
)


@st.composite
def graphs(draw, max_n=12):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [p for p, keep in zip(pairs, mask) if keep])


class TestGraph:
    def test_edges_are_canonical_and_deduplicated(self):
        g = Graph(3, [(2, 0), (0, 2), (1, 2)])
        assert g.edges == ((0, 2), (1, 2))
        assert g.degrees == (1, 1, 2)

    @pytest.mark.parametrize("n,edges", [(0, []), (2, [(1, 1)]), (2, [(0, 2)])])
    def test_rejects_bad_input(self, n, edges):
        with pytest.raises(ValueError):
            Graph(n, edges)

    def test_without_checks_membership(self):
        g = cycle(4)
        assert g.without([(1, 0)]).m == 3
        with pytest.raises(ValueError):
            g.without([(0, 2)])

    def test_induced_relabels(self):
        sub, labels = cycle(5).induced([4, 0, 1])
        assert labels == (0, 1, 4)
        assert sub.edges == ((0, 1), (0, 2))

    def test_core_of_path(self):
        c, labels = core(Graph(4, [(0, 1), (1, 2), (2, 3)]))
        assert labels == (1, 2) and c.edges == ((0, 1),)

    def test_components_include_isolated(self):
        g = Graph(5, [(0, 3), (3, 4)])
        assert components(g) == [(0, 3, 4), (1,), (2,)]
        assert not is_connected(g)

    def test_bipartition(self):
        assert bipartition(cycle(5)) is None
        a, b = bipartition(cycle(6))
        assert set(a) | set(b) == set(range(6))

    def test_complement_and_union(self):
        assert complement(complete(4)).m == 0
        u = disjoint_union(complete(3), cycle(4))
        assert u.n == 7 and u.m == 7 and len(components(u)) == 2

    def test_matchings(self):
        assert matching_number(petersen()) == 5
        assert is_matching([(0, 1), (2, 3)]) and not is_matching([(0, 1), (1, 2)])
        ms = list(enumerate_matchings(cycle(4), 2))
        assert ms == [((0, 1), (2, 3)), ((0, 3), (1, 2))]

    def test_edge_spec(self):
        assert parse_edge_spec("2-1, 2-3") == ((1, 2), (2, 3))
        for bad in ("1-1", "1-", "a-b", "1-2-3"):
            with pytest.raises(GraphFormatError):
                parse_edge_spec(bad)


class TestGraph6:
    @pytest.mark.parametrize(
        "text,n,m",
        [("@", 1, 0), ("A_", 2, 1), ("Bw", 3, 3), ("C~", 4, 6), ("DQc", 5, 4)],
    )
    def test_known_strings(self, text, n, m):
        g = parse_graph6(text)
        assert (g.n, g.m) == (n, m)
        assert encode_graph6(g) == text

    def test_matches_networkx(self):
        for g in (petersen(), cycle(7), complete(9), two_hamiltonian(11)):
            assert encode_graph6(g) == nx.to_graph6_bytes(g.to_networkx(), header=False).decode().strip()

    def test_long_size_form(self):
        g = cycle(70)
        s = encode_graph6(g)
        assert s.startswith("~")
        assert parse_graph6(s) == g

    @pytest.mark.parametrize(
        "text,offset",
        [("?", 0), ("B", 1), ("Bww", 2), ("Bx", 1), ("B w", 1), ("Bé", 1), ("~~??????", 1)],
    )
    def test_malformed_reports_offset(self, text, offset):
        with pytest.raises(GraphFormatError, match=f"byte offset {offset}"):
            parse_graph6(text)

    def test_empty(self):
        with pytest.raises(GraphFormatError):
            parse_graph6("   ")

    @settings(max_examples=200, deadline=None)
    @given(graphs(max_n=20))
    def test_roundtrip(self, g):
        assert parse_graph6(encode_graph6(g)) == g


class TestEdgeList:
    def test_with_and_without_count_line(self):
        assert parse_edge_list("# tri\n3\n0 1\n1 2\n0 2\n") == complete(3)
        assert parse_edge_list("0 1\n1 2\n") == Graph(3, [(0, 1), (1, 2)])

    @pytest.mark.parametrize(
        "text,fragment",
        [("x\n", "line 1"), ("3\n0 0\n", "loop"), ("3\n0 5\n", "out of range"), ("3\n0 a\n", "non-integer"),
         ("3\n0 1 2\n", "line 2"), ("", "empty")],
    )
    def test_errors_name_the_line(self, text, fragment):
        with pytest.raises(GraphFormatError, match=fragment):
            parse_edge_list(text)

    @settings(max_examples=100, deadline=None)
    @given(graphs())
    def test_roundtrip(self, g):
        assert parse_edge_list(format_edge_list(g)) == g


class TestFamilies:
    def test_parse_nested(self):
        spec = parse_family("disjoint_union(complete(3), complement(cycle(5)))")
        assert spec == FamilySpec("disjoint_union", (FamilySpec("complete", (3,)),
                                                      FamilySpec("complement", (FamilySpec("cycle", (5,)),))))
        assert str(spec) == "disjoint_union(complete(3),complement(cycle(5)))"
        assert generate(spec).m == 3 + 5

    @pytest.mark.parametrize("text", ["nope(3)", "cycle(", "cycle(3", "cycle(3))", "cycle(-1)", "cycle(2)",
                                      "two_hamiltonian(4)", "comp_matchings_plus_claw(6)", "petersen(1)",
                                      "regular_plus_edge(5,3,0,1)", "regular_plus_edge(5,4,0,1)",
                                      "clique_union_plus_matching(4,2,0,1)"])
    def test_invalid_specs(self, text):
        with pytest.raises(FamilySpecError):
            generate(text)

    def test_unknown_lists_available(self):
        with pytest.raises(FamilySpecError, match="complete_bipartite"):
            parse_family("hypercube(3)")

    def test_walecki_decomposes_complete(self):
        for n in (5, 7, 9, 11):
            seen = set()
            for cyc in hamiltonian_cycles(n):
                assert sorted(cyc) == list(range(n))
                seen |= {tuple(sorted((cyc[i], cyc[(i + 1) % n]))) for i in range(n)}
            assert seen == set(complete(n).edges)

    def test_two_hamiltonian_is_four_regular(self):
        g = two_hamiltonian(7)
        assert g.is_regular() and g.max_degree == 4

    def test_claw_complement(self):
        g = comp_matchings_plus_claw(7)
        assert sorted(complement(g).degrees) == [1, 1, 1, 1, 1, 1, 2]

    def test_regular_plus_edge(self):
        g = generate("regular_plus_edge(6,2,0,2)")
        assert g.m == 7 and g.has_edge(0, 2)

    def test_clique_union_matching(self):
        g = generate("clique_union_plus_matching(3,3,0,4)")
        assert g.m == 9 + 4
        assert sorted(g.degrees) == [2] + [3] * 8


class TestCensus:
    # numbers of unlabelled graphs on n vertices
    @pytest.mark.parametrize("n,count", [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34), (6, 156), (7, 1044)])
    def test_class_counts(self, n, count):
        assert len(graph_classes(n)) == count

    def test_classes_agree_with_labeled_enumeration(self):
        certs = {certificate(g) for g in labeled_graphs(5)}
        assert certs == {certificate(g) for g in graph_classes(5)}

    def test_labeled_count(self):
        assert sum(1 for _ in labeled_graphs(5)) == 1024
        assert sum(1 for _ in graphs_up_to(4)) == 1 + 7 + 63

    def test_canonical_form_is_invariant(self):
        g = cycle(6)
        h = Graph(6, [(0, 2), (2, 4), (4, 1), (1, 3), (3, 5), (5, 0)])
        cg, lab = canonical_form(g)
        assert cg == canonical_form(h)[0]
        pos = {v: i for i, v in enumerate(lab)}
        assert {tuple(sorted((pos[u], pos[v]))) for u, v in g.edges} == set(cg.edges)
