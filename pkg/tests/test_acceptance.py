"""Acceptance criteria 1-9.  Run with ``pytest tests/test_acceptance.py -v``; the
terminal summary prints one PASS/FAIL line per criterion."""

import random
import time

import networkx as nx
import pytest

import oracles
from eskit.census import labeled_graphs
from eskit.coloring import (
    balanced_coloring,
    chi_prime,
    complete_cyclic_coloring,
    is_proper,
    kempe_path,
    kempe_swap,
    vizing_coloring,
)
from eskit.families import complete, complete_bipartite, cycle, path, two_hamiltonian
from eskit.graph import Graph, is_matching
from eskit.stability import all_min_mitigating_sets, bipartite_matching_transform, drops_to, es_exact
from eskit.theorems import check_regular_plus_edge, oracle_es, summarize, sweep

CASES = 500


def assert_clean(verdicts, label):
    s = summarize(verdicts)
    failures = [v for v in verdicts if not v.passed]
    assert not failures, f"{label}: {len(failures)} failures, first counterexample {failures[0].to_dict()}"
    assert s["verdicts"] > 0, f"{label}: no graph reached the check"
    return s


def order_of(g6):
    return ord(g6[0]) - 63


LABELED_WITH_EDGES = sum(2 ** (n * (n - 1) // 2) - 1 for n in range(1, 7))


def random_graph(rng, n, p):
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


@pytest.mark.criterion(1, "family closed forms for paths, cycles, complete bipartite and complete graphs")
def test_criterion_1_family_oracles():
    start = time.perf_counter()
    cases = []
    cases += [(f"path({n})", path(n), (n - 1) // 2) for n in range(3, 13)]
    cases += [(f"cycle({n})", cycle(n), 1 if n % 2 else n // 2) for n in range(3, 13)]
    cases += [(f"complete_bipartite({m},{n})", complete_bipartite(m, n), m)
              for n in range(1, 6) for m in range(1, n + 1)]
    cases += [(f"complete({n})", complete(n), n // 2) for n in range(3, 9)]
    for spec, g, want in cases:
        assert es_exact(g).es == want, spec
        assert oracle_es(spec) == want, spec
    assert time.perf_counter() - start < 5.0


@pytest.mark.criterion(2, "es = floor(n/2) exactly on the three-condition extreme predicate, n <= 7")
def test_criterion_2_extreme_equivalence():
    start = time.perf_counter()
    verdicts = sweep(7, "extreme")
    s = assert_clean(verdicts, "extreme")
    # labelled graphs up to 6 vertices plus the 1043 non-empty classes on 7
    assert s["verdicts"] == LABELED_WITH_EDGES + 1043
    assert sum(1 for v in verdicts if v.predicted) > 0
    assert time.perf_counter() - start < 600


@pytest.mark.criterion(3, "connected regular graphs n <= 8 have es = 1 exactly for K2 and odd cycles")
def test_criterion_3_regular_es1():
    verdicts = sweep(8, "regular_es1")
    assert_clean(verdicts, "regular_es1")
    hits = sorted({v.graph6 for v in verdicts if v.computed})
    # K2, C3, C5, C7 (labelled copies included for n <= 6)
    assert {order_of(g6) for g6 in hits} == {2, 3, 5, 7}


@pytest.mark.criterion(4, "near-extreme characterisations for Class 2 graphs and the connected even bound")
def test_criterion_4_near_extreme():
    even = sweep(8, ["even_near_extreme", "connected_even_bound"])
    assert_clean(even, "even order")
    assert any(v.predicted for v in even if v.check == "even_near_extreme")
    odd = [v for v in sweep(7, ["odd_near_extreme", "odd_near_extreme_restricted"])
           if order_of(v.graph6) in (5, 7)]
    assert_clean(odd, "odd order")
    assert any(v.predicted for v in odd if v.check == "odd_near_extreme")


@pytest.mark.criterion(5, "every graph n <= 7 has a matching minimum mitigating set, with sub-suites")
def test_criterion_5_matching_conjecture():
    s = assert_clean(sweep(7, "matching_conjecture"), "matching conjecture")
    assert s["verdicts"] == LABELED_WITH_EDGES + 1043
    assert_clean(sweep(7, "two_matching"), "2-matching transform")
    assert_clean(sweep(8, "near_extreme_matching"), "matching witness at floor(n/2)-1")


@pytest.mark.criterion(6, "regular es=2 graphs with degree other than 4 have only matching minimum sets")
def test_criterion_6_regular_es2():
    verdicts = sweep(8, "regular_es2_matchings")
    assert_clean(verdicts, "regular es=2")
    g = two_hamiltonian(7)
    assert es_exact(g).es == 2
    sets = all_min_mitigating_sets(g)
    assert any(not is_matching(s) for s in sets)
    assert any(is_matching(s) for s in sets)


@pytest.mark.criterion(7, "constructive colouring procedures on random inputs")
def test_criterion_7_vizing():
    rng = random.Random(1)
    for _ in range(CASES):
        g = random_graph(rng, rng.randint(2, 50), rng.random())
        if g.m:
            col = vizing_coloring(g)
            assert is_proper(col) and col.num_used <= g.max_degree + 1


@pytest.mark.criterion(7, "constructive colouring procedures on random inputs")
def test_criterion_7_balanced():
    rng = random.Random(2)
    done = 0
    while done < CASES:
        g = random_graph(rng, rng.randint(2, 10), rng.random())
        if not g.m:
            continue
        col = balanced_coloring(g)
        sizes = col.class_sizes()
        assert is_proper(col) and col.k == chi_prime(g).chi_prime and max(sizes) - min(sizes) <= 1
        if g.n <= 6:
            assert col.k == oracles.chromatic_index(g.n, g.edges)
        done += 1


@pytest.mark.criterion(7, "constructive colouring procedures on random inputs")
def test_criterion_7_kempe():
    rng = random.Random(3)
    done = 0
    while done < CASES:
        g = random_graph(rng, rng.randint(2, 12), rng.random())
        if not g.m:
            continue
        col = vizing_coloring(g)
        options = [(u, a, b) for u in range(g.n) for a in col.colors_at(u) for b in col.missing_at(u)]
        if not options:
            continue
        u, a, b = rng.choice(options)
        swapped = kempe_swap(col, kempe_path(col, u, a, b))
        assert is_proper(swapped)
        assert kempe_swap(swapped, kempe_path(swapped, u, b, a)) == col
        done += 1


@pytest.mark.criterion(7, "constructive colouring procedures on random inputs")
def test_criterion_7_bipartite_transform():
    rng = random.Random(4)
    done = 0
    while done < CASES:
        a = rng.randint(1, 9)
        b = rng.randint(1, 10 - a)
        g = Graph(a + b, [(u, a + v) for u in range(a) for v in range(b) if rng.random() < rng.random()])
        if not g.m:
            continue
        target = g.max_degree - 1
        removed = []
        for e in rng.sample(g.edges, g.m):
            removed.append(e)
            if drops_to(g, removed, target):
                break
        out = bipartite_matching_transform(g, removed)
        assert is_matching(out) and len(out) <= len(removed) and drops_to(g, out, target)
        done += 1


@pytest.mark.criterion(7, "constructive colouring procedures on random inputs")
def test_criterion_7_cyclic_coloring():
    for n in (3, 5, 7, 9):
        col = complete_cyclic_coloring(n)
        assert is_proper(col)
        for v in range(n):
            assert col.missing_at(v) == {v}


@pytest.mark.criterion(8, "adding a non-edge to a regular graph: es = 1 iff the graph is Class 1")
def test_criterion_8_regular_plus_edge():
    rng = random.Random(5)
    done = 0
    seen = set()
    while done < 100:
        n = rng.randint(3, 10)
        r = rng.randint(1, n - 2)
        if n * r % 2:
            continue
        h = nx.random_regular_graph(r, n, seed=rng.randrange(2 ** 32))
        g = Graph(n, h.edges())
        non_edges = [(u, v) for u in range(n) for v in range(u + 1, n) if not g.has_edge(u, v)]
        v = check_regular_plus_edge(g, rng.choice(non_edges))
        assert v.passed, v.to_dict()
        seen.add(v.computed["es_is_one"])
        done += 1
    assert seen == {True, False}


@pytest.mark.criterion(9, "hardness results are out of scope; exact values at desk scale stand in")
def test_criterion_9_exact_at_desk_scale():
    for n in range(2, 6):
        for g in labeled_graphs(n):
            if g.m:
                assert es_exact(g).es == oracles.stability_index(n, g.edges)
