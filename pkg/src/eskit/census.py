"""Exhaustive small-graph enumeration: labelled by bitmask, or one graph per isomorphism class."""

from __future__ import annotations

from collections.abc import Iterator
from functools import lru_cache
from itertools import combinations

import pynauty

from .graph import Graph, encode_graph6


def _nauty(g: Graph) -> pynauty.Graph:
    return pynauty.Graph(g.n, adjacency_dict={v: list(g.adj[v]) for v in range(g.n)})


def certificate(g: Graph) -> bytes:
    return bytes([g.n % 256]) + pynauty.certificate(_nauty(g))


def canonical_labeling(g: Graph) -> list[int]:
    """``lab[i]`` is the vertex of ``g`` placed at position i of the canonical form."""
    return list(pynauty.canon_label(_nauty(g)))


def canonical_form(g: Graph) -> tuple[Graph, list[int]]:
    lab = canonical_labeling(g)
    pos = {v: i for i, v in enumerate(lab)}
    return Graph(g.n, [(pos[u], pos[v]) for u, v in g.edges]), lab


def labeled_graphs(n: int) -> Iterator[Graph]:
    """All 2^(n choose 2) graphs on vertex set 0..n-1, edgeless one included."""
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(n, [p for i, p in enumerate(pairs) if mask >> i & 1])


@lru_cache(maxsize=None)
def graph_classes(n: int) -> tuple[Graph, ...]:
    """One canonical representative per isomorphism class on n vertices, sorted by graph6.

    Built by attaching a new vertex to every subset of every class on n-1 vertices.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return (Graph(1),)
    seen: dict[bytes, Graph] = {}
    for h in graph_classes(n - 1):
        for mask in range(1 << (n - 1)):
            g = Graph(n, list(h.edges) + [(v, n - 1) for v in range(n - 1) if mask >> v & 1])
            cert = certificate(g)
            if cert not in seen:
                seen[cert] = canonical_form(g)[0]
    return tuple(sorted(seen.values(), key=encode_graph6))


def graphs_up_to(n_max: int, labeled_max: int = 6, min_edges: int = 1) -> Iterator[Graph]:
    """Labelled graphs for n <= labeled_max, isomorphism classes above it."""
    for n in range(1, n_max + 1):
        source = labeled_graphs(n) if n <= labeled_max else graph_classes(n)
        for g in source:
            if g.m >= min_edges:
                yield g
