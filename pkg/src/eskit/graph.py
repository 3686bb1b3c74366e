"""Simple undirected graphs on vertices 0..n-1, text formats, and matchings."""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from itertools import combinations

import networkx as nx

from .errors import GraphFormatError

Edge = tuple[int, int]
EdgeSet = tuple[Edge, ...]

GRAPH6_MAX_N = 258047


def canon_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable simple graph; edges are stored sorted as ``(u, v)`` with ``u < v``."""

    __slots__ = ("n", "edges", "adj", "_index", "_degrees")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if n < 1:
            raise ValueError(f"graph needs at least one vertex, got n={n}")
        seen = set()
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside [0, {n})")
            seen.add(canon_edge(u, v))
        self.n = n
        self.edges: EdgeSet = tuple(sorted(seen))
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in adj)
        self._index = {e: i for i, e in enumerate(self.edges)}
        self._degrees = tuple(len(a) for a in self.adj)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.edges)})"

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def degrees(self) -> tuple[int, ...]:
        return self._degrees

    def degree(self, v: int) -> int:
        return self._degrees[v]

    @property
    def max_degree(self) -> int:
        return max(self._degrees)

    def has_edge(self, u: int, v: int) -> bool:
        return canon_edge(u, v) in self._index

    def edge_index(self, e: Sequence[int]) -> int:
        return self._index[canon_edge(e[0], e[1])]

    def is_regular(self) -> bool:
        return len(set(self._degrees)) == 1

    def without(self, removed: Iterable[Sequence[int]]) -> Graph:
        drop = {canon_edge(e[0], e[1]) for e in removed}
        missing = drop - set(self._index)
        if missing:
            raise ValueError(f"edges not in graph: {sorted(missing)}")
        return Graph(self.n, (e for e in self.edges if e not in drop))

    def with_edges(self, added: Iterable[Sequence[int]]) -> Graph:
        return Graph(self.n, list(self.edges) + [tuple(e) for e in added])

    def induced(self, vertices: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
        """Induced subgraph relabelled to 0..k-1, with the map back to original labels."""
        keep = tuple(sorted(set(vertices)))
        pos = {v: i for i, v in enumerate(keep)}
        sub = [(pos[u], pos[v]) for u, v in self.edges if u in pos and v in pos]
        return Graph(max(len(keep), 1), sub), keep

    def to_networkx(self) -> nx.Graph:
        h = nx.Graph()
        h.add_nodes_from(range(self.n))
        h.add_edges_from(self.edges)
        return h


def edgeless(n: int) -> Graph:
    return Graph(n)


def is_matching(edges: Iterable[Sequence[int]]) -> bool:
    seen: set[int] = set()
    for u, v in edges:
        if u in seen or v in seen:
            return False
        seen.add(u)
        seen.add(v)
    return True


def format_edges(edges: Iterable[Sequence[int]]) -> str:
    return ",".join(f"{u}-{v}" for u, v in edges)


def parse_edge_spec(text: str) -> EdgeSet:
    """Parse ``"u-v,u-w"`` into canonical edges."""
    out = []
    for chunk in text.replace(" ", "").split(","):
        if not chunk:
            continue
        parts = chunk.split("-")
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise GraphFormatError(f"bad edge token {chunk!r}")
        u, v = int(parts[0]), int(parts[1])
        if u == v:
            raise GraphFormatError(f"loop in edge token {chunk!r}")
        out.append(canon_edge(u, v))
    return tuple(sorted(set(out)))


# graph6 -------------------------------------------------------------------

def _graph6_size(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    return bytes([126, 63 + (n >> 12 & 63), 63 + (n >> 6 & 63), 63 + (n & 63)])


def encode_graph6(g: Graph) -> str:
    if not 1 <= g.n <= GRAPH6_MAX_N:
        raise ValueError(f"graph6 encoding supports 1 <= n <= {GRAPH6_MAX_N}, got {g.n}")
    bits = []
    for j in range(1, g.n):
        for i in range(j):
            bits.append(1 if g.has_edge(i, j) else 0)
    bits.extend([0] * (-len(bits) % 6))
    data = bytes(
        63 + int("".join(map(str, bits[k:k + 6])), 2) for k in range(0, len(bits), 6)
    )
    return (_graph6_size(g.n) + data).decode("ascii")


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    for offset, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise GraphFormatError(f"character {ch!r} out of graph6 range", offset)
    raw = s.encode("ascii")
    if not raw:
        raise GraphFormatError("empty graph6 string", 0)
    if raw[0] == 126:
        if len(raw) < 4:
            raise GraphFormatError("truncated size field", len(raw))
        if raw[1] == 126:
            raise GraphFormatError("8-byte size form is not supported", 1)
        n = ((raw[1] - 63) << 12) | ((raw[2] - 63) << 6) | (raw[3] - 63)
        start = 4
    else:
        n = raw[0] - 63
        start = 1
    if n < 1:
        raise GraphFormatError("graph with zero vertices", 0)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = raw[start:]
    if len(body) < need:
        raise GraphFormatError(f"expected {need} data bytes, got {len(body)}", len(raw))
    if len(body) > need:
        raise GraphFormatError("trailing bytes after graph data", start + need)
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = body[k // 6] - 63
            if byte >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    if need and (body[-1] - 63) & ((1 << (need * 6 - nbits)) - 1):
        raise GraphFormatError("nonzero padding bits", start + need - 1)
    return Graph(n, edges)


# edge list -----------------------------------------------------------------

def parse_edge_list(text: str) -> Graph:
    """One ``u v`` pair per line, optionally preceded by a line holding ``n``.

    Without the count line the order is one more than the largest index.
    """
    lines = [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines())]
    lines = [(i, ln) for i, ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise GraphFormatError("empty edge list")
    n = None
    lineno, head = lines[0]
    if len(head.split()) == 1:
        try:
            n = int(head)
        except ValueError:
            raise GraphFormatError(f"line {lineno}: vertex count {head!r} is not an integer") from None
        if n < 1:
            raise GraphFormatError(f"line {lineno}: vertex count must be positive")
        lines = lines[1:]
    edges = []
    for lineno, ln in lines:
        toks = ln.split()
        if len(toks) != 2:
            raise GraphFormatError(f"line {lineno}: expected 'u v', got {ln!r}")
        try:
            u, v = int(toks[0]), int(toks[1])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer token in {ln!r}") from None
        if u == v:
            raise GraphFormatError(f"line {lineno}: loop at vertex {u}")
        if u < 0 or v < 0 or (n is not None and max(u, v) >= n):
            raise GraphFormatError(f"line {lineno}: vertex index out of range [0, {n})")
        edges.append((u, v))
    if n is None:
        n = 1 + max(max(e) for e in edges)
    return Graph(n, edges)


def format_edge_list(g: Graph) -> str:
    """Edge lines only, with a leading count line when trailing vertices are isolated."""
    body = [f"{u} {v}" for u, v in g.edges]
    if not g.edges or max(v for _, v in g.edges) != g.n - 1:
        body.insert(0, str(g.n))
    return "\n".join(body)


# structure -----------------------------------------------------------------

def core(g: Graph) -> tuple[Graph, tuple[int, ...]]:
    """Subgraph induced by the maximum-degree vertices, plus the label map back to ``g``."""
    top = g.max_degree
    return g.induced(v for v in range(g.n) if g.degree(v) == top)


def components(g: Graph) -> list[tuple[int, ...]]:
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        stack = [s]
        while stack:
            u = stack.pop()
            for w in g.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        out.append(tuple(sorted(comp)))
    return out


def is_connected(g: Graph) -> bool:
    return len(components(g)) == 1


def bipartition(g: Graph) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Two sides of a proper 2-vertex-colouring, or None if ``g`` has an odd cycle."""
    side = [-1] * g.n
    for s in range(g.n):
        if side[s] >= 0:
            continue
        side[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for w in g.adj[u]:
                if side[w] < 0:
                    side[w] = 1 - side[u]
                    stack.append(w)
                elif side[w] == side[u]:
                    return None
    a = tuple(v for v in range(g.n) if side[v] == 0)
    b = tuple(v for v in range(g.n) if side[v] == 1)
    return a, b


def is_bipartite(g: Graph) -> bool:
    return bipartition(g) is not None


def complement(g: Graph) -> Graph:
    return Graph(g.n, (e for e in combinations(range(g.n), 2) if not g.has_edge(*e)))


def disjoint_union(g: Graph, h: Graph) -> Graph:
    shift = g.n
    return Graph(g.n + h.n, list(g.edges) + [(u + shift, v + shift) for u, v in h.edges])


# matchings and subsets -----------------------------------------------------

def max_matching(g: Graph) -> EdgeSet:
    """A maximum-cardinality matching (blossom algorithm via networkx)."""
    mate = nx.max_weight_matching(g.to_networkx(), maxcardinality=True)
    return tuple(sorted(canon_edge(u, v) for u, v in mate))


def matching_number(g: Graph) -> int:
    return len(max_matching(g))


def _matchings_by_index(edges: Sequence[Edge], k: int) -> Iterator[tuple[int, ...]]:
    m = len(edges)
    chosen: list[int] = []
    used: set[int] = set()

    def rec(start: int) -> Iterator[tuple[int, ...]]:
        if len(chosen) == k:
            yield tuple(chosen)
            return
        for i in range(start, m - (k - len(chosen)) + 1):
            u, v = edges[i]
            if u in used or v in used:
                continue
            chosen.append(i)
            used.add(u)
            used.add(v)
            yield from rec(i + 1)
            chosen.pop()
            used.discard(u)
            used.discard(v)

    if k >= 1:
        yield from rec(0)


def enumerate_matchings(g: Graph, k: int) -> Iterator[EdgeSet]:
    """Every k-matching once, in lexicographic order of sorted edge indices."""
    if k < 1:
        raise ValueError("matching size must be at least 1")
    for idx in _matchings_by_index(g.edges, k):
        yield tuple(g.edges[i] for i in idx)


def enumerate_edge_subsets(g: Graph, k: int) -> Iterator[EdgeSet]:
    if not 0 <= k <= g.m:
        raise ValueError(f"subset size {k} outside [0, {g.m}]")
    for idx in combinations(range(g.m), k):
        yield tuple(g.edges[i] for i in idx)
