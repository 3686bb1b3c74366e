"""Edge colourings: exact chromatic index, Konig and Vizing constructions, Kempe chains."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .errors import EdgelessGraphError, PreconditionError
from .graph import Edge, EdgeSet, Graph, bipartition, canon_edge, components, core

DECIDERS = ("bipartite", "overfull", "core_forest", "core_unicyclic", "exact_search")


@dataclass(frozen=True)
class EdgeColoring:
    """Colour indices in ``[0, k)`` aligned with ``graph.edges``."""

    graph: Graph
    colors: tuple[int, ...]
    k: int

    def __post_init__(self):
        if len(self.colors) != self.graph.m:
            raise ValueError("one colour per edge required")
        if any(not 0 <= c < self.k for c in self.colors):
            raise ValueError(f"colours must lie in [0, {self.k})")

    def color_of(self, u: int, v: int) -> int:
        return self.colors[self.graph.edge_index((u, v))]

    def classes(self) -> list[EdgeSet]:
        out: list[list[Edge]] = [[] for _ in range(self.k)]
        for e, c in zip(self.graph.edges, self.colors):
            out[c].append(e)
        return [tuple(cls) for cls in out]

    def class_sizes(self) -> list[int]:
        return [len(c) for c in self.classes()]

    @property
    def num_used(self) -> int:
        return len(set(self.colors))

    def colors_at(self, v: int) -> set[int]:
        return {self.color_of(v, w) for w in self.graph.adj[v]}

    def missing_at(self, v: int) -> set[int]:
        return set(range(self.k)) - self.colors_at(v)

    def to_dict(self) -> dict:
        return {"k": self.k, "colors": [[u, v, c] for (u, v), c in zip(self.graph.edges, self.colors)]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, g: Graph, data: dict) -> EdgeColoring:
        colors = [-1] * g.m
        for u, v, c in data["colors"]:
            colors[g.edge_index((u, v))] = c
        return cls(g, tuple(colors), data["k"])


def is_proper(col: EdgeColoring) -> bool:
    seen: set[tuple[int, int]] = set()
    for (u, v), c in zip(col.graph.edges, col.colors):
        if not 0 <= c < col.k or (u, c) in seen or (v, c) in seen:
            return False
        seen.add((u, c))
        seen.add((v, c))
    return True


@dataclass(frozen=True)
class ClassVerdict:
    class_tag: int
    chi_prime: int
    witness: EdgeColoring
    decided_by: str


# mutable working colouring --------------------------------------------------

class _ColorState:
    """Partial colouring with per-vertex colour -> neighbour maps."""

    def __init__(self, g: Graph, k: int):
        self.g = g
        self.k = k
        self.at: list[dict[int, int]] = [{} for _ in range(g.n)]
        self.col: dict[Edge, int] = {}

    @classmethod
    def from_coloring(cls, col: EdgeColoring) -> _ColorState:
        st = cls(col.graph, col.k)
        for (u, v), c in zip(col.graph.edges, col.colors):
            st.paint(u, v, c)
        return st

    def free(self, v: int) -> int:
        at = self.at[v]
        for c in range(self.k):
            if c not in at:
                return c
        raise AssertionError(f"no free colour at vertex {v}")

    def paint(self, u: int, v: int, c: int) -> None:
        e = canon_edge(u, v)
        if e in self.col:
            self.erase(u, v)
        assert c not in self.at[u] and c not in self.at[v], "improper paint"
        self.col[e] = c
        self.at[u][c] = v
        self.at[v][c] = u

    def erase(self, u: int, v: int) -> int:
        c = self.col.pop(canon_edge(u, v))
        del self.at[u][c]
        del self.at[v][c]
        return c

    def walk(self, u: int, c1: int, c2: int) -> list[int]:
        """Vertices of the maximal path from ``u`` alternating c1, c2, c1, ..."""
        path = [u]
        want, other = c1, c2
        cur = u
        while want in self.at[cur]:
            cur = self.at[cur][want]
            path.append(cur)
            want, other = other, want
        return path

    def flip(self, path: list[int], c1: int, c2: int) -> None:
        pairs = list(zip(path, path[1:]))
        old = [self.erase(a, b) for a, b in pairs]
        for (a, b), c in zip(pairs, old):
            self.paint(a, b, c2 if c == c1 else c1)

    def snapshot(self) -> EdgeColoring:
        return EdgeColoring(self.g, tuple(self.col[e] for e in self.g.edges), self.k)


# exact search ----------------------------------------------------------------

def _search(n: int, edges: list[Edge], k: int, balanced: bool = False) -> list[int] | None:
    """Backtracking decision of proper k-edge-colourability.

    Picks the uncoloured edge with fewest admissible colours (ties by larger
    endpoint-degree sum, then index) and tries colours lowest first; a colour
    index is only opened once all lower ones are in use.  With ``balanced``
    every class gets floor(m/k) or ceil(m/k) edges.
    """
    m = len(edges)
    if m == 0:
        return []
    if k <= 0:
        return None
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    if max(deg) > k:
        return None
    order = sorted(range(m), key=lambda i: (-(deg[edges[i][0]] + deg[edges[i][1]]), i))
    used = [0] * n
    left = deg[:]
    color = [-1] * m
    full = (1 << k) - 1
    lo, rem = divmod(m, k)
    hi = lo + (1 if rem else 0)
    max_at_hi = rem if rem else k
    count = [0] * k
    at_hi = 0
    active = [v for v in range(n) if deg[v]]

    def capacity_ok(remaining: int) -> bool:
        # each colour can still cover at most half of the vertices lacking it
        total = 0
        for c in range(k):
            bit = 1 << c
            free_c = 0
            for v in active:
                if left[v] and not used[v] & bit:
                    free_c += 1
            total += free_c // 2
            if total >= remaining:
                return True
        return total >= remaining

    def rec(done: int, top: int) -> bool:
        nonlocal at_hi
        if done == m:
            return True
        if not capacity_ok(m - done):
            return False
        best = -1
        best_avail = k + 1
        for i in order:
            if color[i] >= 0:
                continue
            u, v = edges[i]
            avail = k - (used[u] | used[v]).bit_count()
            if avail < best_avail:
                best, best_avail = i, avail
                if avail <= 1:
                    break
        if best_avail == 0:
            return False
        u, v = edges[best]
        mask = used[u] | used[v]
        for c in range(min(top + 1, k)):
            bit = 1 << c
            if mask & bit:
                continue
            if balanced:
                if count[c] >= hi or (count[c] == lo and hi > lo and at_hi >= max_at_hi):
                    continue
            color[best] = c
            used[u] |= bit
            used[v] |= bit
            left[u] -= 1
            left[v] -= 1
            if balanced:
                count[c] += 1
                if count[c] == hi and hi > lo:
                    at_hi += 1
            if rec(done + 1, max(top, c + 1)):
                return True
            if balanced:
                if count[c] == hi and hi > lo:
                    at_hi -= 1
                count[c] -= 1
            color[best] = -1
            used[u] &= full ^ bit
            used[v] &= full ^ bit
            left[u] += 1
            left[v] += 1
        return False

    return color if rec(0, 0) else None


def _is_forest(g: Graph) -> bool:
    return g.m == g.n - len(components(g))


def _core_unicyclic_ok(c: Graph) -> bool:
    """Every core component is a tree or unicyclic, and not all of them are cycles."""
    all_cycles = True
    for comp in components(c):
        sub, _ = c.induced(comp)
        if sub.m > len(comp):
            return False
        is_cycle = sub.m == len(comp) and all(d == 2 for d in sub.degrees)
        all_cycles = all_cycles and is_cycle
    return not all_cycles


def _decide_component(h: Graph, delta: int, fast: bool) -> tuple[bool, str, list[int] | None]:
    """Is the connected graph ``h`` (with max degree ``delta``) delta-edge-colourable?"""
    if fast:
        if bipartition(h) is not None:
            return True, "bipartite", None
        if h.n % 2 == 1 and 2 * h.m > (h.n - 1) * delta:
            return False, "overfull", None
        c, _ = core(h)
        if _is_forest(c):
            return True, "core_forest", None
        if _core_unicyclic_ok(c):
            return True, "core_unicyclic", None
    sol = _search(h.n, list(h.edges), delta)
    return sol is not None, "exact_search", sol


def _heavy_components(g: Graph, delta: int) -> list[tuple[Graph, tuple[int, ...]]]:
    out = []
    for comp in components(g):
        h, labels = g.induced(comp)
        if h.m and h.max_degree == delta:
            out.append((h, labels))
    return out


def is_class_one(g: Graph, fast_paths: bool = True) -> bool:
    """True iff ``g`` is Delta-edge-colourable (edgeless graphs count as Class 1)."""
    if g.m == 0:
        return True
    delta = g.max_degree
    return all(_decide_component(h, delta, fast_paths)[0] for h, _ in _heavy_components(g, delta))


def _lift(g: Graph, labels: tuple[int, ...], col: EdgeColoring, into: dict[Edge, int]) -> None:
    for (u, v), c in zip(col.graph.edges, col.colors):
        into[canon_edge(labels[u], labels[v])] = c


def _compact(g: Graph, colors: dict[Edge, int]) -> EdgeColoring:
    present = sorted(set(colors.values()))
    remap = {c: i for i, c in enumerate(present)}
    return EdgeColoring(g, tuple(remap[colors[e]] for e in g.edges), len(present))


def chi_prime(g: Graph, fast_paths: bool = True) -> ClassVerdict:
    """Exact chromatic index with a witness colouring using exactly that many colours."""
    if g.m == 0:
        raise EdgelessGraphError("chromatic index queries need at least one edge")
    delta = g.max_degree
    if fast_paths and bipartition(g) is not None:
        return ClassVerdict(1, delta, konig_coloring(g), "bipartite")
    heavy = _heavy_components(g, delta)
    rank = {t: i for i, t in enumerate(DECIDERS)}
    tag = "bipartite"
    solved: dict[tuple[int, ...], list[int]] = {}
    for h, labels in heavy:
        ok, t, sol = _decide_component(h, delta, fast_paths)
        if not ok:
            return ClassVerdict(2, delta + 1, vizing_coloring(g), t)
        if rank[t] > rank[tag]:
            tag = t
        if sol is not None:
            solved[labels] = sol
    colors: dict[Edge, int] = {}
    for comp in components(g):
        h, labels = g.induced(comp)
        if h.m == 0:
            continue
        if h.max_degree < delta:
            part = vizing_coloring(h)
        elif labels in solved:
            part = EdgeColoring(h, tuple(solved[labels]), delta)
        elif bipartition(h) is not None:
            part = konig_coloring(h)
        else:
            sol = _search(h.n, list(h.edges), delta)
            assert sol is not None, "fast path claimed Class 1 but search failed"
            part = EdgeColoring(h, tuple(sol), delta)
        _lift(g, labels, part, colors)
    return ClassVerdict(1, delta, _compact(g, colors), tag)


def find_coloring(g: Graph, k: int) -> Optional[EdgeColoring]:
    """Some proper colouring of ``g`` with palette ``[0, k)``, or None if none exists."""
    if g.m == 0:
        return EdgeColoring(g, (), max(k, 0))
    delta = g.max_degree
    if delta > k:
        return None
    if delta < k:
        col = vizing_coloring(g)
        return EdgeColoring(g, col.colors, k)
    if bipartition(g) is not None:
        return konig_coloring(g)
    colors: dict[Edge, int] = {}
    for comp in components(g):
        h, labels = g.induced(comp)
        if h.m == 0:
            continue
        if h.max_degree < k:
            part = vizing_coloring(h)
        else:
            if h.n % 2 == 1 and 2 * h.m > (h.n - 1) * k:
                return None
            sol = _search(h.n, list(h.edges), k)
            if sol is None:
                return None
            part = EdgeColoring(h, tuple(sol), k)
        _lift(g, labels, part, colors)
    return EdgeColoring(g, tuple(colors[e] for e in g.edges), k)


# constructions -----------------------------------------------------------------

def konig_coloring(g: Graph) -> EdgeColoring:
    """Proper Delta-colouring of a bipartite graph, fixing conflicts by path swaps."""
    if g.m == 0:
        raise EdgelessGraphError("nothing to colour")
    if bipartition(g) is None:
        raise PreconditionError("Konig colouring needs a bipartite graph")
    st = _ColorState(g, g.max_degree)
    for u, v in g.edges:
        a = st.free(u)
        if a in st.at[v]:
            b = st.free(v)
            path = st.walk(v, a, b)
            assert u not in path
            st.flip(path, a, b)
        st.paint(u, v, a)
    return st.snapshot()


def _is_fan(st: _ColorState, u: int, fan: list[int]) -> bool:
    for prev, w in zip(fan, fan[1:]):
        c = st.col.get(canon_edge(u, w))
        if c is None or c in st.at[prev]:
            return False
    return True


def vizing_coloring(g: Graph) -> EdgeColoring:
    """Proper colouring with at most Delta+1 colours (Misra-Gries fan rotation)."""
    if g.m == 0:
        raise EdgelessGraphError("nothing to colour")
    st = _ColorState(g, g.max_degree + 1)
    for u, v in g.edges:
        fan = [v]
        in_fan = {v}
        while True:
            last = fan[-1]
            nxt = None
            for w in g.adj[u]:
                if w in in_fan:
                    continue
                c = st.col.get(canon_edge(u, w))
                if c is not None and c not in st.at[last]:
                    nxt = w
                    break
            if nxt is None:
                break
            fan.append(nxt)
            in_fan.add(nxt)
        c = st.free(u)
        d = st.free(fan[-1])
        if d in st.at[u]:
            st.flip(st.walk(u, d, c), d, c)
        for j, w in enumerate(fan):
            if d not in st.at[w] and _is_fan(st, u, fan[: j + 1]):
                break
        else:
            raise AssertionError("no rotatable fan prefix")
        for i in range(j):
            shifted = st.erase(u, fan[i + 1])
            st.paint(u, fan[i], shifted)
        st.paint(u, fan[j], d)
    return _compact(g, st.col)


# Kempe chains ------------------------------------------------------------------

@dataclass(frozen=True)
class KempePath:
    vertices: tuple[int, ...]
    c1: int
    c2: int

    @property
    def edges(self) -> EdgeSet:
        return tuple(canon_edge(a, b) for a, b in zip(self.vertices, self.vertices[1:]))


def kempe_path(col: EdgeColoring, u: int, c1: int, c2: int) -> KempePath:
    """The maximal (c1, c2)-alternating path from ``u``; c1 must be present at u, c2 absent."""
    present = col.colors_at(u)
    if c1 not in present or c2 in present:
        raise PreconditionError(f"vertex {u} must see colour {c1} and miss colour {c2}")
    st = _ColorState.from_coloring(col)
    return KempePath(tuple(st.walk(u, c1, c2)), c1, c2)


def kempe_swap(col: EdgeColoring, path: KempePath) -> EdgeColoring:
    g = col.graph
    verts = path.vertices
    want, other = path.c1, path.c2
    if len(verts) < 2 or path.c2 in col.colors_at(verts[0]):
        raise PreconditionError("stale Kempe path")
    for a, b in zip(verts, verts[1:]):
        if not g.has_edge(a, b) or col.color_of(a, b) != want:
            raise PreconditionError("stale Kempe path")
        want, other = other, want
    if want in col.colors_at(verts[-1]):
        raise PreconditionError("stale Kempe path: not maximal")
    colors = list(col.colors)
    for e in path.edges:
        i = g.edge_index(e)
        colors[i] = path.c2 if colors[i] == path.c1 else path.c1
    return EdgeColoring(g, tuple(colors), col.k)


# balanced and singleton colourings ---------------------------------------------

def _two_color_component(st: _ColorState, e: Edge, a: int, b: int) -> list[Edge]:
    seen = {e}
    stack = list(e)
    while stack:
        x = stack.pop()
        for c in (a, b):
            y = st.at[x].get(c)
            if y is not None:
                f = canon_edge(x, y)
                if f not in seen:
                    seen.add(f)
                    stack.append(y)
    return sorted(seen)


def balanced_coloring(g: Graph) -> EdgeColoring:
    """Optimal colouring whose class sizes differ by at most one."""
    verdict = chi_prime(g)
    k = verdict.chi_prime
    st = _ColorState.from_coloring(verdict.witness)
    while True:
        sizes = [0] * k
        for c in st.col.values():
            sizes[c] += 1
        a = max(range(k), key=lambda c: (sizes[c], -c))
        b = min(range(k), key=lambda c: (sizes[c], c))
        if sizes[a] - sizes[b] <= 1:
            return st.snapshot()
        for e in sorted(x for x, c in st.col.items() if c == a):
            comp = _two_color_component(st, e, a, b)
            na = sum(1 for f in comp if st.col[f] == a)
            if 2 * na - len(comp) == 1:
                old = {f: st.erase(*f) for f in comp}
                for f, c in old.items():
                    st.paint(*f, b if c == a else a)
                break
        else:
            sol = _search(g.n, list(g.edges), k, balanced=True)
            if sol is None:
                raise AssertionError("balanced colouring search failed")
            return EdgeColoring(g, tuple(sol), k)


def singleton_class_coloring(g: Graph) -> Optional[EdgeColoring]:
    """An optimal colouring with a one-edge colour class, if any exists."""
    chi = chi_prime(g).chi_prime
    for e in g.edges:
        rest = g.without([e])
        col = find_coloring(rest, chi - 1)
        if col is None:
            continue
        by_edge = dict(zip(rest.edges, col.colors))
        by_edge[e] = chi - 1
        return EdgeColoring(g, tuple(by_edge[f] for f in g.edges), chi)
    return None


def complete_cyclic_coloring(n: int) -> EdgeColoring:
    """n-colouring of K_n (n odd) in which vertex i is the only vertex missing colour i."""
    if n < 3 or n % 2 == 0:
        raise PreconditionError("needs odd n >= 3")
    from .families import complete

    g = complete(n)
    half = (n + 1) // 2
    return EdgeColoring(g, tuple((u + v) * half % n for u, v in g.edges), n)
