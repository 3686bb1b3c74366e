"""Named graph families and the ``name(arg, ...)`` spec grammar used by the CLI."""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from typing import Union

from .errors import FamilySpecError
from .graph import Graph, canon_edge, complement, disjoint_union

Arg = Union[int, "FamilySpec"]


@dataclass(frozen=True)
class FamilySpec:
    name: str
    args: tuple[Arg, ...] = ()

    def __str__(self) -> str:
        return f"{self.name}({','.join(str(a) for a in self.args)})"


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def parse_family(text: str) -> FamilySpec:
    """Parse e.g. ``complete_bipartite(3,4)`` or ``complement(cycle(7))``."""
    tokens = [(m.group(1), m.group(2), m.group(3)) for m in _TOKEN.finditer(text) if m.group(0).strip()]
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None, None)

    def expect(ch: str) -> None:
        nonlocal pos
        if peek()[2] != ch:
            raise FamilySpecError(f"expected {ch!r} in family spec {text!r}")
        pos += 1

    def spec() -> FamilySpec:
        nonlocal pos
        name = peek()[1]
        if name is None:
            raise FamilySpecError(f"expected a family name in {text!r}")
        pos += 1
        args: list[Arg] = []
        expect("(")
        if peek()[2] != ")":
            while True:
                num, ident, _ = peek()
                if num is not None:
                    args.append(int(num))
                    pos += 1
                elif ident is not None:
                    args.append(spec())
                else:
                    raise FamilySpecError(f"bad argument in family spec {text!r}")
                if peek()[2] == ",":
                    pos += 1
                    continue
                break
        expect(")")
        return FamilySpec(name, tuple(args))

    out = spec()
    if pos != len(tokens):
        raise FamilySpecError(f"trailing text in family spec {text!r}")
    if out.name not in GENERATORS:
        raise FamilySpecError(f"unknown family {out.name!r}; available: {', '.join(sorted(GENERATORS))}")
    return out


# plain constructors ------------------------------------------------------------

def path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return Graph(n, combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def complete_minus_edge(n: int) -> Graph:
    return complete(n).without([(0, 1)])


def comp_matchings_plus_claw(n: int) -> Graph:
    """Complement of (n-3)/2 disjoint edges plus a path on three vertices."""
    base = [(i, i + 1) for i in range(0, n - 3, 2)] + [(n - 3, n - 2), (n - 2, n - 1)]
    return complement(Graph(n, base))


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def hamiltonian_cycles(n: int) -> list[list[int]]:
    """Walecki decomposition of K_n (n odd) into (n-1)/2 Hamiltonian cycles.

    Vertex n-1 is the hub; cycle i visits the rim in the zigzag
    i, i+1, i-1, i+2, i-2, ... (mod n-1) and closes through the hub.
    """
    t = (n - 1) // 2
    rim = 2 * t
    out = []
    for i in range(t):
        order = [i]
        for s in range(1, t + 1):
            order.append((i + s) % rim)
            if s < t:
                order.append((i - s) % rim)
        out.append([n - 1] + order)
    return out


def two_hamiltonian(n: int) -> Graph:
    edges = []
    for cyc in hamiltonian_cycles(n)[:2]:
        edges += [(cyc[j], cyc[(j + 1) % n]) for j in range(n)]
    return Graph(n, edges)


def circulant_regular(n: int, r: int) -> Graph:
    """r-regular circulant on n vertices using jumps 1..r/2 (and n/2 when r is odd)."""
    edges = [(i, (i + s) % n) for i in range(n) for s in range(1, r // 2 + 1)]
    if r % 2:
        edges += [(i, i + n // 2) for i in range(n // 2)]
    return Graph(n, edges)


def add_non_edge(g: Graph, u: int, v: int) -> Graph:
    if u == v or g.has_edge(u, v):
        raise FamilySpecError(f"{u}-{v} is not a non-edge of the base graph")
    return g.with_edges([(u, v)])


def clique_union_plus_matching(q: int, copies: int, isolated: int, size: int) -> Graph:
    """``copies`` disjoint K_q plus ``isolated`` vertices, joined by a ``size``-matching.

    Matching edges always run between different blocks; each step pairs the
    two blocks with the most unmatched vertices (lower index first on ties).
    """
    blocks = [list(range(b * q, (b + 1) * q)) for b in range(copies)]
    base = copies * q
    blocks += [[base + i] for i in range(isolated)]
    n = base + isolated
    edges = [e for blk in blocks[:copies] for e in combinations(blk, 2)]
    for _ in range(size):
        live = sorted((-len(b), i) for i, b in enumerate(blocks) if b)
        if len(live) < 2:
            raise FamilySpecError(f"cannot add a matching of size {size} across the blocks")
        i, j = live[0][1], live[1][1]
        edges.append(canon_edge(blocks[i].pop(0), blocks[j].pop(0)))
    return Graph(n, edges)


# spec dispatch -------------------------------------------------------------------

def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise FamilySpecError(msg)


def _ints(spec: FamilySpec, count: int) -> tuple[int, ...]:
    _need(len(spec.args) == count and all(isinstance(a, int) for a in spec.args),
          f"{spec.name} takes {count} integer argument(s), got {spec}")
    return spec.args  # type: ignore[return-value]


def _specs(spec: FamilySpec, count: int) -> tuple[FamilySpec, ...]:
    _need(len(spec.args) == count and all(isinstance(a, FamilySpec) for a in spec.args),
          f"{spec.name} takes {count} nested family spec(s), got {spec}")
    return spec.args  # type: ignore[return-value]


def _gen_path(s):
    (n,) = _ints(s, 1)
    _need(n >= 2, "path needs n >= 2")
    return path(n)


def _gen_cycle(s):
    (n,) = _ints(s, 1)
    _need(n >= 3, "cycle needs n >= 3")
    return cycle(n)


def _gen_complete(s):
    (n,) = _ints(s, 1)
    _need(n >= 1, "complete needs n >= 1")
    return complete(n)


def _gen_empty(s):
    (n,) = _ints(s, 1)
    _need(n >= 1, "empty needs n >= 1")
    return Graph(n)


def _gen_complete_bipartite(s):
    a, b = _ints(s, 2)
    _need(a >= 1 and b >= 1, "complete_bipartite needs both parts non-empty")
    return complete_bipartite(a, b)


def _gen_complete_minus_edge(s):
    (n,) = _ints(s, 1)
    _need(n >= 2, "complete_minus_edge needs n >= 2")
    return complete_minus_edge(n)


def _gen_claw(s):
    (n,) = _ints(s, 1)
    _need(n >= 5 and n % 2 == 1, "comp_matchings_plus_claw needs odd n >= 5")
    return comp_matchings_plus_claw(n)


def _gen_clique_union(s):
    q, copies, isolated, size = _ints(s, 4)
    _need(q >= 1 and q % 2 == 1, "clique_union_plus_matching needs odd clique order")
    _need(copies >= 1 and isolated >= 0 and size >= 0, "bad block counts")
    return clique_union_plus_matching(q, copies, isolated, size)


def _gen_two_hamiltonian(s):
    (n,) = _ints(s, 1)
    _need(n >= 5 and n % 2 == 1, "two_hamiltonian needs odd n >= 5")
    return two_hamiltonian(n)


def _gen_regular_plus_edge(s):
    n, r, u, v = _ints(s, 4)
    _need(0 <= r < n - 1, "regular_plus_edge needs 0 <= r < n-1 (base graph must not be complete)")
    _need(n * r % 2 == 0, "no r-regular graph on n vertices when n*r is odd")
    _need(0 <= u < n and 0 <= v < n, "edge endpoints out of range")
    return add_non_edge(circulant_regular(n, r), u, v)


def _gen_disjoint_union(s):
    a, b = _specs(s, 2)
    return disjoint_union(generate(a), generate(b))


def _gen_complement(s):
    (a,) = _specs(s, 1)
    return complement(generate(a))


def _gen_petersen(s):
    _ints(s, 0)
    return petersen()


GENERATORS = {
    "path": _gen_path,
    "cycle": _gen_cycle,
    "complete": _gen_complete,
    "empty": _gen_empty,
    "complete_bipartite": _gen_complete_bipartite,
    "complete_minus_edge": _gen_complete_minus_edge,
    "comp_matchings_plus_claw": _gen_claw,
    "clique_union_plus_matching": _gen_clique_union,
    "two_hamiltonian": _gen_two_hamiltonian,
    "regular_plus_edge": _gen_regular_plus_edge,
    "disjoint_union": _gen_disjoint_union,
    "complement": _gen_complement,
    "petersen": _gen_petersen,
}


def generate(spec: FamilySpec | str) -> Graph:
    if isinstance(spec, str):
        spec = parse_family(spec)
    try:
        gen = GENERATORS[spec.name]
    except KeyError:
        raise FamilySpecError(
            f"unknown family {spec.name!r}; available: {', '.join(sorted(GENERATORS))}"
        ) from None
    return gen(spec)
