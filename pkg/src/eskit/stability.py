"""Chromatic edge stability: minimum mitigating sets and matching transforms."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from .coloring import _ColorState, chi_prime, find_coloring, is_class_one, konig_coloring
from .errors import EdgelessGraphError, PreconditionError
from .graph import (
    Edge,
    EdgeSet,
    Graph,
    _matchings_by_index,
    bipartition,
    canon_edge,
    core,
    encode_graph6,
    is_matching,
    matching_number,
)

log = logging.getLogger(__name__)

MODES = ("exact", "matching_only")


@dataclass
class MitigatingReport:
    es: int
    witness: EdgeSet
    witness_is_matching: bool
    matching_witness: Optional[EdgeSet]
    mode: str
    subsets_tested: int = 0
    chi_prime: int = field(default=0, compare=False)

    def to_dict(self) -> dict:
        return {
            "es": self.es,
            "witness": [list(e) for e in self.witness],
            "witness_is_matching": self.witness_is_matching,
            "matching_witness": None if self.matching_witness is None else [list(e) for e in self.matching_witness],
            "mode": self.mode,
            "subsets_tested": self.subsets_tested,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


@dataclass
class ConjectureVerdict:
    graph6: str
    es: int
    has_matching_min_witness: bool
    matching_witness: Optional[EdgeSet]

    def to_dict(self) -> dict:
        return {
            "graph6": self.graph6,
            "es": self.es,
            "has_matching_min_witness": self.has_matching_min_witness,
            "matching_witness": None if self.matching_witness is None else [list(e) for e in self.matching_witness],
        }


def _require_edges(g: Graph) -> None:
    if g.m == 0:
        raise EdgelessGraphError("the stability index is undefined for edgeless graphs")


def drops_to(g: Graph, removed, target: int) -> bool:
    """Does ``g`` minus ``removed`` admit a proper ``target``-edge-colouring?"""
    h = g.without(removed)
    if h.m == 0:
        return True
    d = h.max_degree
    if d != target:
        return d < target
    return is_class_one(h)


def is_mitigating(g: Graph, removed, chi: int | None = None) -> bool:
    if chi is None:
        chi = chi_prime(g).chi_prime
    return drops_to(g, removed, chi - 1)


class _Tester:
    """Mitigation test over edge-index tuples with cheap degree pre-filters."""

    def __init__(self, g: Graph, chi: int):
        self.g = g
        self.target = chi - 1
        self.over = [v for v in range(g.n) if g.degree(v) > self.target]
        self.count = 0

    def __call__(self, idx: tuple[int, ...]) -> bool:
        self.count += 1
        g = self.g
        if self.over:
            hits: dict[int, int] = {}
            for i in idx:
                u, v = g.edges[i]
                hits[u] = hits.get(u, 0) + 1
                hits[v] = hits.get(v, 0) + 1
            for v in self.over:
                if g.degree(v) - hits.get(v, 0) > self.target:
                    return False
        return drops_to(g, [g.edges[i] for i in idx], self.target)


def _lower_bound(g: Graph, chi: int) -> int:
    target = chi - 1
    lb = g.m - target * matching_number(g)
    if chi == g.max_degree:
        c, _ = core(g)
        lb = max(lb, c.n - (matching_number(c) if c.m else 0))
    return max(1, lb)


def es_exact(g: Graph, mode: str = "exact") -> MitigatingReport:
    """Chromatic edge stability index with the lexicographically least witness.

    Sizes k run upward from a counting lower bound to the smallest colour class
    of an optimal colouring.  At each k the k-matchings are tried first; in
    ``exact`` mode every remaining k-subset that precedes the first successful
    matching (in lexicographic order) is then checked, so the returned witness
    is the least mitigating k-set overall.
    """
    _require_edges(g)
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    verdict = chi_prime(g)
    chi = verdict.chi_prime
    test = _Tester(g, chi)
    ub = min(s for s in verdict.witness.class_sizes() if s)
    edges = g.edges
    for k in range(min(_lower_bound(g, chi), ub), ub + 1):
        mw = next((idx for idx in _matchings_by_index(edges, k) if test(idx)), None)
        wit = mw
        if mode == "exact":
            for idx in combinations(range(g.m), k):
                if mw is not None and idx >= mw:
                    break
                if is_matching(edges[i] for i in idx):
                    continue
                if test(idx):
                    wit = idx
                    break
        if wit is not None:
            witness = tuple(edges[i] for i in wit)
            return MitigatingReport(
                es=k,
                witness=witness,
                witness_is_matching=is_matching(witness),
                matching_witness=None if mw is None else tuple(edges[i] for i in mw),
                mode=mode,
                subsets_tested=test.count,
                chi_prime=chi,
            )
    raise AssertionError("no mitigating set up to the colour-class bound")


def all_min_mitigating_sets(g: Graph, es: int | None = None) -> list[EdgeSet]:
    _require_edges(g)
    chi = chi_prime(g).chi_prime
    if es is None:
        es = es_exact(g).es
    test = _Tester(g, chi)
    return [tuple(g.edges[i] for i in idx) for idx in combinations(range(g.m), es) if test(idx)]


def verify_matching_conjecture(g: Graph) -> ConjectureVerdict:
    """Is some minimum mitigating set of ``g`` a matching?"""
    report = es_exact(g, "exact")
    return ConjectureVerdict(
        graph6=encode_graph6(g),
        es=report.es,
        has_matching_min_witness=report.matching_witness is not None,
        matching_witness=report.matching_witness,
    )


verify_conjecture1 = verify_matching_conjecture


def is_critical(g: Graph) -> bool:
    _require_edges(g)
    verdict = chi_prime(g)
    if verdict.class_tag == 1:
        log.info("criticality is only modelled for Class 2 graphs; returning False")
        return False
    return all(drops_to(g, [e], verdict.chi_prime - 1) for e in g.edges)


def vizing_adjacency_check(g: Graph) -> bool:
    """Each endpoint x of an edge xy has at least Delta+1-d(y) other max-degree neighbours."""
    if not is_critical(g):
        raise PreconditionError("adjacency check needs a critical Class 2 graph")
    delta = g.max_degree
    for u, v in g.edges:
        for x, y in ((u, v), (v, u)):
            heavy = sum(1 for w in g.adj[x] if w != y and g.degree(w) == delta)
            if heavy < delta + 1 - g.degree(y):
                return False
    return True


def alpha_core_bound(g: Graph) -> int:
    """Matching number of the core; bounds the index from above for Class 2 graphs."""
    _require_edges(g)
    if chi_prime(g).class_tag != 2:
        raise PreconditionError("the core matching bound applies to Class 2 graphs")
    c, _ = core(g)
    return matching_number(c) if c.m else 0


# 2-matching transform ------------------------------------------------------------

def _swap_in(st: _ColorState, center: int, a: int, b: int, c1: int) -> Optional[EdgeSet]:
    """With c1 missing at ``center``, trade center-a for the c1-edge at ``a``."""
    a2 = st.at[a].get(c1)
    if a2 is None or a2 == b:
        return None
    return tuple(sorted((canon_edge(a, a2), canon_edge(center, b))))


def _two_matching_from_coloring(st: _ColorState, x: int, y: int, z: int) -> Optional[EdgeSet]:
    missing = [c for c in range(st.k) if c not in st.at[x]]
    yz = st.col.get(canon_edge(y, z))
    for c1 in missing:
        if yz != c1:
            for a, b in ((y, z), (z, y)):
                out = _swap_in(st, x, a, b, c1)
                if out is not None:
                    return out
    if len(missing) != 1 or not st.at[x]:
        return None
    c1 = missing[0]
    c2 = min(st.at[x])
    p = st.walk(x, c2, c1)
    if y not in p and z not in p:
        st.flip(p, c2, c1)
        return _swap_in(st, x, y, z, c2) or _swap_in(st, x, z, y, c2)
    if p.index(y) > p.index(z):
        y, z = z, y
    # move to the pair {zx, zy}: xy takes colour c1, yz leaves the graph
    st.erase(y, z)
    st.paint(x, y, c1)
    if c2 in st.at[z]:
        st.flip(st.walk(z, c2, c1), c2, c1)
    return _swap_in(st, z, x, y, c2) or _swap_in(st, z, y, x, c2)


def two_matching_transform(g: Graph, s) -> EdgeSet:
    """Turn a mitigating pair of adjacent edges into a mitigating 2-matching.

    Requires es(g) = 2.  Works on a (chi'-1)-colouring of g minus the pair,
    using colours missing at the shared vertex and, when the third side of
    the triangle blocks that, one or two Kempe swaps.
    """
    s = tuple(sorted({canon_edge(*e) for e in s}))
    if len(s) != 2 or not all(g.has_edge(*e) for e in s):
        raise PreconditionError("need two distinct edges of the graph")
    chi = chi_prime(g).chi_prime
    if not drops_to(g, s, chi - 1):
        raise PreconditionError(f"{s} is not a mitigating set")
    if any(drops_to(g, [e], chi - 1) for e in g.edges):
        raise PreconditionError("the stability index is 1, not 2")
    if is_matching(s):
        return s
    (x,) = set(s[0]) & set(s[1])
    y = s[0][0] + s[0][1] - x
    z = s[1][0] + s[1][1] - x
    col = find_coloring(g.without(s), chi - 1)
    assert col is not None
    out = _two_matching_from_coloring(_ColorState.from_coloring(col), x, y, z)
    if out is not None and is_matching(out) and drops_to(g, out, chi - 1):
        return out
    log.warning("recolouring argument did not close for %s; searching 2-matchings", s)
    for a, b in combinations(g.edges, 2):
        if is_matching((a, b)) and drops_to(g, (a, b), chi - 1):
            return (a, b)
    raise AssertionError("no mitigating 2-matching although the index is 2")


# bipartite transform -------------------------------------------------------------

def bipartite_matching_transform(g: Graph, m) -> EdgeSet:
    """Replace a mitigating set of a bipartite graph by a mitigating matching no larger.

    Peels one edge xy off the set, transforms the rest inside g - xy, and
    repairs the result along an alternating path of matching edges and one
    colour class of a (Delta-1)-colouring.
    """
    if bipartition(g) is None:
        raise PreconditionError("graph is not bipartite")
    m = tuple(sorted({canon_edge(*e) for e in m}))
    if not m or not all(g.has_edge(*e) for e in m):
        raise PreconditionError("mitigating set must be non-empty edges of the graph")
    if not drops_to(g, m, g.max_degree - 1):
        raise PreconditionError(f"{m} is not a mitigating set")
    return _bip_transform(g, m)


def _bip_transform(g: Graph, m: EdgeSet) -> EdgeSet:
    delta = g.max_degree
    if is_matching(m):
        return m
    xy = m[0]
    if drops_to(g, [xy], delta - 1):
        return (xy,)
    h = g.without([xy])
    sub = _bip_transform(h, m[1:])
    covered = {v for e in sub for v in e}
    x, y = xy
    if x not in covered and y not in covered:
        return tuple(sorted(sub + (xy,)))
    if x in covered and y in covered:
        return sub
    if y in covered:
        x, y = y, x
    mm = set(sub) | {xy}
    col = konig_coloring(g.without(mm)) if len(mm) < g.m else None
    st = _ColorState.from_coloring(col) if col is not None else _ColorState(g, max(delta - 1, 1))
    c1 = next(c for c in range(max(delta - 1, 1)) if c not in st.at[x])
    mate = {}
    for a, b in mm:
        if canon_edge(a, b) != xy:
            mate[a] = b
            mate[b] = a
    # x -(xy)- y -(c1)- . -(M'')- . -(c1)- ...
    walk = [x, y]
    path_c1: list[Edge] = []
    path_mm: list[Edge] = [xy]
    cur = y
    while True:
        nxt = st.at[cur].get(c1)
        if nxt is None:
            break
        path_c1.append(canon_edge(cur, nxt))
        walk.append(nxt)
        cur = nxt
        nxt = mate.get(cur)
        if nxt is None:
            break
        path_mm.append(canon_edge(cur, nxt))
        walk.append(nxt)
        cur = nxt
    out = tuple(sorted(set(path_c1) | (mm - set(path_mm))))
    if is_matching(out) and len(out) <= len(m) and drops_to(g, out, delta - 1):
        return out
    raise AssertionError("alternating-path repair did not produce a mitigating matching")
