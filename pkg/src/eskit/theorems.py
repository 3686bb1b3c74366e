"""Closed-form family values, characterisation predicates, and the verification sweep."""

from __future__ import annotations

import json
import logging
import os
from collections.abc import Callable, Iterable
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Optional

from .census import canonical_labeling, certificate, graphs_up_to
from .coloring import ClassVerdict, chi_prime
from .errors import BudgetExceededError, FamilySpecError, PreconditionError
from .families import FamilySpec, clique_union_plus_matching, generate, parse_family
from .graph import EdgeSet, Graph, canon_edge, complement, components, core, encode_graph6, is_connected, is_matching, max_matching
from .stability import (
    MitigatingReport,
    alpha_core_bound,
    all_min_mitigating_sets,
    drops_to,
    es_exact,
    is_critical,
    two_matching_transform,
    vizing_adjacency_check,
)

log = logging.getLogger(__name__)

DEFAULT_BUDGET_NMAX = 8


def budget_nmax() -> int:
    raw = os.environ.get("ES_KIT_BUDGET_NMAX")
    return int(raw) if raw else DEFAULT_BUDGET_NMAX


@dataclass
class Verdict:
    graph6: str
    check: str
    predicted: Any
    computed: Any
    passed: bool
    witness: Any = None

    def to_dict(self) -> dict:
        out = {"graph6": self.graph6, "check": self.check, "predicted": self.predicted,
               "computed": self.computed, "pass": self.passed}
        if self.witness is not None:
            out["witness"] = self.witness
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _verdict(g6: str, check: str, predicted, computed, witness=None) -> Verdict:
    return Verdict(g6, check, predicted, computed, predicted == computed, witness)


# family oracles ------------------------------------------------------------------

@dataclass(frozen=True)
class FamilyOracle:
    spec: FamilySpec
    expected_chi_prime: int
    expected_es: int


def _args(spec: FamilySpec) -> tuple:
    return tuple(spec.args)


def family_oracle(spec: FamilySpec | str) -> FamilyOracle:
    """Closed-form chromatic index and stability index for families that have one."""
    if isinstance(spec, str):
        spec = parse_family(spec)
    generate(spec)  # validates parameters
    name, a = spec.name, _args(spec)
    if name == "path":
        (n,) = a
        return FamilyOracle(spec, 1 if n == 2 else 2, 1 if n == 2 else (n - 1) // 2)
    if name == "cycle":
        (n,) = a
        return FamilyOracle(spec, 3 if n % 2 else 2, 1 if n % 2 else n // 2)
    if name == "complete" and a[0] >= 2:
        (n,) = a
        return FamilyOracle(spec, n if n % 2 else n - 1, n // 2)
    if name == "complete_bipartite":
        m, n = a
        return FamilyOracle(spec, max(m, n), min(m, n))
    if name == "complete_minus_edge" and a[0] % 2 == 1 and a[0] >= 5:
        (n,) = a
        return FamilyOracle(spec, n, (n - 3) // 2)
    if name == "comp_matchings_plus_claw":
        (n,) = a
        return FamilyOracle(spec, n - 1, (n - 3) // 2)
    if name == "two_hamiltonian":
        return FamilyOracle(spec, 5, 2)
    if name == "clique_union_plus_matching":
        q, copies, isolated, size = a
        n = q * copies + isolated
        if size == 0 and q >= 3:
            if copies == 1 and isolated == 1:
                return FamilyOracle(spec, q, (n - 2) // 2)
            if copies == 2 and isolated == 0:
                return FamilyOracle(spec, q, n // 2 - 1)
            if (copies, isolated) in ((2, 1), (3, 0)):
                return FamilyOracle(spec, q, (n - 3) // 2)
    raise FamilySpecError(f"no closed form for {spec}")


def oracle_es(spec: FamilySpec | str) -> int:
    return family_oracle(spec).expected_es


# recognisers -----------------------------------------------------------------------

def is_complete(g: Graph) -> bool:
    return 2 * g.m == g.n * (g.n - 1)


def clique_component_sizes(g: Graph) -> Optional[list[int]]:
    """Sorted component orders if every component is complete, else None."""
    sizes = []
    for comp in components(g):
        k = len(comp)
        if any(g.degree(v) != k - 1 for v in comp):
            return None
        sizes.append(k)
    return sorted(sizes)


def is_almost_regular(g: Graph) -> bool:
    """n-1 vertices share one degree."""
    counts: dict[int, int] = {}
    for d in g.degrees:
        counts[d] = counts.get(d, 0) + 1
    return max(counts.values()) >= g.n - 1


def _matchings_plus_path3_complement(g: Graph) -> bool:
    h = complement(g)
    sizes = sorted(len(c) for c in components(h))
    if sizes.count(3) != 1 or any(s not in (2, 3) for s in sizes):
        return False
    return h.m == len(sizes) + 1  # every K2 has one edge, the P3 two


def predict_extreme(g: Graph, verdict: ClassVerdict | None = None) -> bool:
    """Structure that forces the stability index to equal floor(n/2)."""
    n = g.n
    if n % 2 == 1 and is_complete(g):
        return True
    verdict = verdict or chi_prime(g)
    if verdict.class_tag != 1:
        return False
    if n % 2 == 0:
        return g.is_regular()
    return 2 * g.m == (n - 1) * g.max_degree


def predict_regular_es1(g: Graph) -> bool:
    if not (g.is_regular() and is_connected(g)):
        raise PreconditionError("needs a connected regular graph")
    return (g.n == 2 and g.m == 1) or (g.max_degree == 2 and g.n % 2 == 1)


def _class_parity(g: Graph, verdict: ClassVerdict | None, parity: int) -> None:
    verdict = verdict or chi_prime(g)
    if verdict.class_tag != 2 or g.n % 2 != parity:
        kind = "even" if parity == 0 else "odd"
        raise PreconditionError(f"needs a Class 2 graph of {kind} order")


def predict_even_class2_near_extreme(g: Graph, verdict: ClassVerdict | None = None) -> bool:
    """K1 + K_{n-1}, or two disjoint copies of an odd clique."""
    _class_parity(g, verdict, 0)
    sizes = clique_component_sizes(g)
    if sizes is None:
        return False
    if sizes == [1, g.n - 1]:
        return True
    return len(sizes) == 2 and sizes[0] == sizes[1] and sizes[0] % 2 == 1 and sizes[0] >= 3


def predict_odd_class2_near_extreme(g: Graph, verdict: ClassVerdict | None = None) -> bool:
    _class_parity(g, verdict, 1)
    n = g.n
    if n >= 5:
        if 2 * g.m == n * (n - 1) - 2:
            return True
        sizes = clique_component_sizes(g)
        if sizes in ([2, n - 2], [1, 1, n - 2]):
            return True
        if _matchings_plus_path3_complement(g):
            return True
        if g.is_regular() and g.max_degree == n - 3:
            return True
    sizes = clique_component_sizes(g)
    if sizes is None:
        return False
    if len(sizes) == 3 and sizes[0] == 1 and sizes[1] == sizes[2] and sizes[1] % 2 and sizes[1] >= 3:
        return True
    return len(sizes) == 3 and sizes[0] == sizes[2] and sizes[0] % 2 == 1 and sizes[0] >= 3


def predict_odd_class2_restricted(g: Graph, verdict: ClassVerdict | None = None) -> bool:
    """For connected, neither regular nor almost regular inputs: only K_n minus an edge."""
    _class_parity(g, verdict, 1)
    if not is_connected(g) or g.is_regular() or is_almost_regular(g):
        raise PreconditionError("needs a connected graph that is neither regular nor almost regular")
    return g.n >= 5 and 2 * g.m == g.n * (g.n - 1) - 2


# constructions ---------------------------------------------------------------------

def check_regular_plus_edge(g: Graph, e) -> Verdict:
    """Adding a non-edge to a regular non-complete graph gives index 1 iff the base is Class 1."""
    if not g.is_regular() or is_complete(g):
        raise PreconditionError("needs a regular, non-complete graph")
    u, v = e
    if u == v or g.has_edge(u, v):
        raise PreconditionError(f"{u}-{v} is not a non-edge")
    plus = g.with_edges([(u, v)])
    base_class1 = g.m == 0 or chi_prime(g).class_tag == 1
    chi = chi_prime(plus).chi_prime
    single = next((f for f in plus.edges if drops_to(plus, [f], chi - 1)), None)
    predicted = {"chi_prime": g.max_degree + 1, "es_is_one": base_class1}
    computed = {"chi_prime": chi, "es_is_one": single is not None}
    return _verdict(encode_graph6(plus), "regular_plus_edge", predicted, computed,
                    {"mitigating_edge": None if single is None else list(single)})


def check_union_constructions(m: int) -> list[Verdict]:
    """The three odd-clique unions with added matchings, checked for class and index."""
    if m < 1:
        raise PreconditionError("m must be positive")
    q = 2 * m + 1
    out = []
    g = clique_union_plus_matching(q, 2, 0, q)
    out.append(_verdict(encode_graph6(g), "two_cliques_perfect_matching", 1, chi_prime(g).class_tag))
    g = clique_union_plus_matching(q, 2, 1, q)
    out.append(_verdict(encode_graph6(g), "two_cliques_vertex_matching", 1, chi_prime(g).class_tag))
    g = clique_union_plus_matching(q, 3, 0, 3 * m + 1)
    v = chi_prime(g)
    es = es_exact(g).es if v.class_tag == 2 else None
    out.append(_verdict(encode_graph6(g), "three_cliques_matching",
                        {"class": 2, "es_at_most_m": True},
                        {"class": v.class_tag, "es_at_most_m": es is not None and es <= m},
                        {"es": es}))
    return out


# sweep -------------------------------------------------------------------------------

class _Facts:
    """Isomorphism-invariant facts about one graph, computed on its canonical form."""

    def __init__(self, canon: Graph):
        self.g = canon

    @cached_property
    def verdict(self) -> ClassVerdict:
        return chi_prime(self.g)

    @cached_property
    def report(self) -> MitigatingReport:
        return es_exact(self.g, "exact")

    @cached_property
    def es_matching_only(self) -> int:
        return es_exact(self.g, "matching_only").es

    @cached_property
    def min_sets(self) -> list[EdgeSet]:
        return all_min_mitigating_sets(self.g, self.report.es)

    @cached_property
    def two_matching_ok(self) -> bool:
        if self.report.matching_witness is None:
            return False
        for s in self.min_sets:
            if not is_matching(s):
                out = two_matching_transform(self.g, s)
                if len(out) != 2 or not is_matching(out):
                    return False
        return True

    @cached_property
    def core_bound(self) -> int:
        return alpha_core_bound(self.g)

    @cached_property
    def core_perfect_matching(self) -> Optional[EdgeSet]:
        c, labels = core(self.g)
        if c.n % 2 or not c.m:
            return None
        mm = max_matching(c)
        if 2 * len(mm) != c.n:
            return None
        return tuple(sorted(canon_edge(labels[u], labels[v]) for u, v in mm))

    @cached_property
    def core_removal_ok(self) -> bool:
        h = self.g.without(self.core_perfect_matching)
        vh = chi_prime(h)
        return vh.class_tag == 2 and es_exact(h).es >= self.report.es

    @cached_property
    def critical(self) -> bool:
        return is_critical(self.g)

    @cached_property
    def adjacency_ok(self) -> bool:
        return vizing_adjacency_check(self.g)


class GraphContext:
    def __init__(self, g: Graph, memo: dict | None):
        self.g = g
        self.n = g.n
        self.graph6 = encode_graph6(g)
        lab = canonical_labeling(g)
        self._lab = lab
        if memo is None:
            memo = {}
        key = certificate(g)
        facts = memo.get(key)
        if facts is None:
            pos = {v: i for i, v in enumerate(lab)}
            facts = _Facts(Graph(g.n, [(pos[u], pos[v]) for u, v in g.edges]))
            memo[key] = facts
        self.facts = facts

    def lift(self, edges: Optional[Iterable]) -> Optional[list[list[int]]]:
        if edges is None:
            return None
        return [list(canon_edge(self._lab[u], self._lab[v])) for u, v in edges]

    @property
    def verdict(self) -> ClassVerdict:
        return self.facts.verdict

    @property
    def class_tag(self) -> int:
        return self.facts.verdict.class_tag

    @property
    def es(self) -> int:
        return self.facts.report.es


CheckFn = Callable[[GraphContext], Optional[tuple[Any, Any, Any]]]


def _bounds(ctx):
    es = ctx.es
    return True, 1 <= es <= ctx.n // 2, {"es": es}


def _extreme(ctx):
    return predict_extreme(ctx.g, ctx.verdict), ctx.es == ctx.n // 2, {"es": ctx.es}


def _regular_es1(ctx):
    g = ctx.g
    if not (g.is_regular() and is_connected(g)):
        return None
    return predict_regular_es1(g), ctx.es == 1, {"es": ctx.es}


def _even_near_extreme(ctx):
    if ctx.n % 2 or ctx.class_tag != 2:
        return None
    return predict_even_class2_near_extreme(ctx.g, ctx.verdict), ctx.es == ctx.n // 2 - 1, {"es": ctx.es}


def _connected_even_bound(ctx):
    if ctx.n % 2 or ctx.class_tag != 2 or not is_connected(ctx.g):
        return None
    return True, ctx.es <= ctx.n // 2 - 2, {"es": ctx.es}


def _odd_near_extreme(ctx):
    if ctx.n % 2 == 0 or ctx.class_tag != 2:
        return None
    return predict_odd_class2_near_extreme(ctx.g, ctx.verdict), 2 * ctx.es == ctx.n - 3, {"es": ctx.es}


def _odd_near_extreme_restricted(ctx):
    g = ctx.g
    if ctx.n % 2 == 0 or ctx.class_tag != 2:
        return None
    if not is_connected(g) or g.is_regular() or is_almost_regular(g):
        return None
    return predict_odd_class2_restricted(g, ctx.verdict), 2 * ctx.es == ctx.n - 3, {"es": ctx.es}


def _matching_conjecture(ctx):
    f = ctx.facts
    ok = f.report.matching_witness is not None and f.es_matching_only == f.report.es
    return True, ok, {"es": f.report.es, "matching_witness": ctx.lift(f.report.matching_witness)}


def _two_matching(ctx):
    if ctx.es != 2:
        return None
    return True, ctx.facts.two_matching_ok, {"matching_witness": ctx.lift(ctx.facts.report.matching_witness)}


def _near_extreme_matching(ctx):
    k = ctx.n // 2 - 1
    if k < 1 or ctx.es != k:
        return None
    mw = ctx.facts.report.matching_witness
    return True, mw is not None, {"matching_witness": ctx.lift(mw)}


def _core_bound(ctx):
    if ctx.class_tag != 2:
        return None
    bound = ctx.facts.core_bound
    return True, ctx.es <= bound, {"es": ctx.es, "core_matching_number": bound}


def _regular_es2_matchings(ctx):
    g = ctx.g
    if not g.is_regular() or g.max_degree == 4 or ctx.es != 2:
        return None
    sets = ctx.facts.min_sets
    return True, all(is_matching(s) for s in sets), {"min_sets": len(sets)}


def _core_matching_removal(ctx):
    if ctx.class_tag != 2 or ctx.facts.core_perfect_matching is None:
        return None
    return True, ctx.facts.core_removal_ok, {"matching": ctx.lift(ctx.facts.core_perfect_matching)}


def _class1_es1_core(ctx):
    g = ctx.g
    if ctx.class_tag != 1 or ctx.es != 1:
        return None
    top = [v for v in range(g.n) if g.degree(v) == g.max_degree]
    ok = len(top) == 1 or (len(top) == 2 and g.has_edge(*top))
    return True, ok, {"max_degree_vertices": top}


def _vizing_adjacency(ctx):
    if ctx.class_tag != 2 or not ctx.facts.critical:
        return None
    return True, ctx.facts.adjacency_ok, None


CHECKS: dict[str, CheckFn] = {
    "bounds": _bounds,
    "extreme": _extreme,
    "regular_es1": _regular_es1,
    "even_near_extreme": _even_near_extreme,
    "connected_even_bound": _connected_even_bound,
    "odd_near_extreme": _odd_near_extreme,
    "odd_near_extreme_restricted": _odd_near_extreme_restricted,
    "matching_conjecture": _matching_conjecture,
    "two_matching": _two_matching,
    "near_extreme_matching": _near_extreme_matching,
    "core_bound": _core_bound,
    "regular_es2_matchings": _regular_es2_matchings,
    "core_matching_removal": _core_matching_removal,
    "class1_es1_core": _class1_es1_core,
    "vizing_adjacency": _vizing_adjacency,
}


# older name kept for command-line compatibility
CHECK_ALIASES = {"conjecture1": "matching_conjecture"}


def resolve_checks(names: Iterable[str] | str) -> list[str]:
    if isinstance(names, str):
        names = [names]
    out: list[str] = []
    for name in names:
        for part in name.split(","):
            part = CHECK_ALIASES.get(part.strip(), part.strip())
            if part == "all":
                out.extend(CHECKS)
            elif part in CHECKS:
                out.append(part)
            else:
                raise ValueError(f"unknown check {part!r}; available: all, {', '.join(CHECKS)}")
    return list(dict.fromkeys(out))


def run_checks(g: Graph, checks: Iterable[str], memo: dict | None = None) -> list[Verdict]:
    ctx = GraphContext(g, memo)
    out = []
    for name in checks:
        res = CHECKS[name](ctx)
        if res is not None:
            predicted, computed, witness = res
            out.append(_verdict(ctx.graph6, name, predicted, computed, witness))
    return out


def _sort(verdicts: list[Verdict]) -> list[Verdict]:
    return sorted(verdicts, key=lambda v: (v.passed, v.graph6, v.check))


def _worker(args):
    graphs, checks = args
    memo: dict = {}
    out = []
    for g6 in graphs:
        from .graph import parse_graph6

        out.extend(run_checks(parse_graph6(g6), checks, memo))
    return out


def sweep(
    n_max: int,
    checks: Iterable[str] | str = "all",
    labeled_max: int = 6,
    n_min: int = 1,
    jobs: int = 1,
    graph_filter: Callable[[Graph], bool] | None = None,
) -> list[Verdict]:
    """Run the selected checks on every graph with at least one edge up to ``n_max`` vertices.

    Orders up to ``labeled_max`` are enumerated as labelled graphs, larger
    orders as isomorphism classes.  Verdicts come back failures first, then by
    graph6 string and check name.
    """
    budget = budget_nmax()
    if n_max > budget:
        raise BudgetExceededError(f"n_max={n_max} exceeds the sweep budget {budget} (ES_KIT_BUDGET_NMAX)")
    names = resolve_checks(checks)
    graphs = (g for g in graphs_up_to(n_max, labeled_max) if g.n >= n_min)
    if graph_filter is not None:
        graphs = (g for g in graphs if graph_filter(g))
    if jobs <= 1:
        memo: dict = {}
        verdicts = [v for g in graphs for v in run_checks(g, names, memo)]
    else:
        from concurrent.futures import ProcessPoolExecutor

        batch = [encode_graph6(g) for g in graphs]
        chunks = [batch[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            verdicts = [v for part in pool.map(_worker, [(c, names) for c in chunks]) for v in part]
    return _sort(verdicts)


def summarize(verdicts: list[Verdict]) -> dict:
    per: dict[str, dict[str, int]] = {}
    for v in verdicts:
        row = per.setdefault(v.check, {"pass": 0, "fail": 0})
        row["pass" if v.passed else "fail"] += 1
    failures = sum(r["fail"] for r in per.values())
    return {"summary": True, "verdicts": len(verdicts), "failures": failures, "per_check": per}
