"""``es-kit`` command line: chromatic index, stability index, family generation, sweeps."""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import dataclass
from typing import Optional, Sequence

from .coloring import chi_prime
from .errors import BudgetExceededError, EdgelessGraphError, EsKitError, PreconditionError
from .families import generate
from .graph import (
    Graph,
    bipartition,
    encode_graph6,
    format_edge_list,
    format_edges,
    parse_edge_list,
    parse_edge_spec,
    parse_graph6,
)
from .stability import (
    all_min_mitigating_sets,
    bipartite_matching_transform,
    es_exact,
    two_matching_transform,
    verify_matching_conjecture,
)
from .theorems import budget_nmax, resolve_checks, summarize, sweep

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DOMAIN = 3
EXIT_TRANSFORM = 4
EXIT_SWEEP_FAIL = 5

@dataclass
class RunConfig:
    command: str
    graph6: Optional[str] = None
    edges: Optional[str] = None
    family: Optional[str] = None
    fmt: Optional[str] = None
    mode: str = "exact"
    fast_paths: bool = True
    jobs: int = 1
    nmax: int = 5
    nmin: int = 1
    labeled_max: int = 6
    checks: tuple[str, ...] = ("all",)
    all_witnesses: bool = False
    conjecture: bool = False
    transform: Optional[str] = None
    seed: int = 0

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> RunConfig:
        fields = {k: v for k, v in vars(ns).items() if k in cls.__dataclass_fields__}
        fields["fast_paths"] = not ns.no_fast_paths
        fields["mode"] = ns.mode.replace("-", "_")
        fields["checks"] = tuple(ns.check or ["all"])
        return cls(**fields)


class InputError(EsKitError):
    pass


def load_graph(cfg: RunConfig) -> Graph:
    if cfg.graph6 is not None:
        return parse_graph6(cfg.graph6)
    if cfg.family is not None:
        return generate(cfg.family)
    if cfg.edges is not None:
        if cfg.edges == "-":
            return parse_edge_list(sys.stdin.read())
        try:
            with open(cfg.edges, encoding="utf-8") as fh:
                return parse_edge_list(fh.read())
        except OSError as exc:
            raise InputError(f"cannot read {cfg.edges}: {exc.strerror}") from None
    text = sys.stdin.read().strip()
    if not text:
        raise InputError("no graph given: use --graph6, --edges or --family, or pipe one on stdin")
    # graph6 never uses digits or '#', edge lists always start with one
    if text[0].isdigit() or text[0] == "#":
        return parse_edge_list(text)
    return parse_graph6(text.splitlines()[0])


def _emit(fmt: str, data: dict, lines: list[str], out) -> None:
    if fmt == "json":
        print(json.dumps(data), file=out)
    else:
        for ln in lines:
            print(ln, file=out)


def cmd_chi(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    g = load_graph(cfg)
    v = chi_prime(g, fast_paths=cfg.fast_paths)
    data = {"graph6": encode_graph6(g), "chi_prime": v.chi_prime, "class": v.class_tag,
            "decided_by": v.decided_by, "witness": v.witness.to_dict()}
    lines = [f"chi_prime={v.chi_prime} class={v.class_tag}", f"decided_by={v.decided_by}"]
    _emit(cfg.fmt or "text", data, lines, out)
    return EXIT_OK


def _edges_json(edges) -> list[list[int]]:
    return [list(e) for e in edges]


def cmd_es(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    g = load_graph(cfg)
    report = es_exact(g, cfg.mode)
    data = {"graph6": encode_graph6(g), "chi_prime": report.chi_prime, **report.to_dict()}
    lines = [
        f"es={report.es}",
        f"chi_prime={report.chi_prime}",
        f"witness={format_edges(report.witness)}",
        f"witness_is_matching={str(report.witness_is_matching).lower()}",
        f"matching_witness={format_edges(report.matching_witness) if report.matching_witness else 'none'}",
        f"mode={report.mode}",
        f"subsets_tested={report.subsets_tested}",
    ]
    if cfg.all_witnesses:
        sets = all_min_mitigating_sets(g, report.es)
        data["all_witnesses"] = [_edges_json(s) for s in sets]
        lines += [f"min_set={format_edges(s)}" for s in sets]
    if cfg.conjecture:
        verdict = verify_matching_conjecture(g)
        data["conjecture"] = verdict.to_dict()
        lines.append(f"has_matching_min_witness={str(verdict.has_matching_min_witness).lower()}")
    if cfg.transform is not None:
        s = parse_edge_spec(cfg.transform)
        try:
            if bipartition(g) is not None:
                kind, result = "bipartite", bipartite_matching_transform(g, s)
            else:
                kind, result = "two_matching", two_matching_transform(g, s)
        except PreconditionError as exc:
            print(f"es-kit: transform precondition failed: {exc}", file=sys.stderr)
            return EXIT_TRANSFORM
        data["transform"] = {"kind": kind, "input": _edges_json(s), "output": _edges_json(result)}
        lines += [f"transform={kind}", f"transformed={format_edges(result)}"]
    _emit(cfg.fmt or "text", data, lines, out)
    return EXIT_OK


def cmd_sweep(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    budget = budget_nmax()
    if cfg.nmax > budget:
        raise BudgetExceededError(f"--nmax {cfg.nmax} exceeds the sweep budget {budget} (set ES_KIT_BUDGET_NMAX)")
    names = resolve_checks(cfg.checks)
    start = time.perf_counter()
    verdicts = sweep(cfg.nmax, names, labeled_max=cfg.labeled_max, n_min=cfg.nmin, jobs=cfg.jobs)
    summary = summarize(verdicts)
    summary["seconds"] = round(time.perf_counter() - start, 3)
    summary["nmax"] = cfg.nmax
    fmt = cfg.fmt or "json"
    for v in verdicts:
        if fmt == "json":
            print(v.to_json(), file=out)
        elif not v.passed:
            print(f"FAIL check={v.check} graph6={v.graph6} predicted={v.predicted} computed={v.computed}", file=out)
    if fmt == "json":
        print(json.dumps(summary), file=out)
    else:
        print(f"verdicts={summary['verdicts']} failures={summary['failures']} seconds={summary['seconds']}", file=out)
    if summary["failures"]:
        first = next(v for v in verdicts if not v.passed)
        print(f"es-kit: counterexample for {first.check}: {first.graph6}", file=sys.stderr)
        return EXIT_SWEEP_FAIL
    return EXIT_OK


def cmd_gen(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    g = generate(cfg.family)
    fmt = cfg.fmt or "graph6"
    if fmt == "graph6":
        print(encode_graph6(g), file=out)
    elif fmt == "edges":
        print(format_edge_list(g), file=out)
    elif fmt == "json":
        print(json.dumps({"n": g.n, "edges": _edges_json(g.edges), "graph6": encode_graph6(g)}), file=out)
    else:
        raise InputError(f"gen cannot write format {fmt!r}")
    return EXIT_OK


def _add_input(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group()
    src.add_argument("--graph6", metavar="S", help="graph in graph6 encoding")
    src.add_argument("--edges", metavar="FILE", help="edge-list file ('-' for stdin)")
    src.add_argument("--family", metavar="SPEC", help='named family such as "cycle(7)"')
    p.add_argument("--no-fast-paths", action="store_true", help="always run the exact search")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=["text", "json", "graph6", "edges"])
    common.add_argument("--mode", choices=["exact", "matching-only"], default="exact")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--seed", type=int, default=0, help="accepted for reproducible runs; every command is deterministic")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="es-kit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("chi", parents=[common], help="chromatic index and class")
    _add_input(p)

    p = sub.add_parser("es", parents=[common], help="chromatic edge stability index")
    _add_input(p)
    p.add_argument("--all-witnesses", action="store_true", help="list every minimum mitigating set")
    p.add_argument("--conjecture", action="store_true", help="report whether a matching is a minimum mitigating set")
    p.add_argument("--transform", metavar="EDGES", help='turn the mitigating set "u-v,u-w" into a matching')

    p = sub.add_parser("sweep", parents=[common], help="check every small graph against the characterisations")
    p.add_argument("--nmax", type=int, default=5)
    p.add_argument("--nmin", type=int, default=1)
    p.add_argument("--labeled-max", type=int, default=6, help="largest order enumerated as labelled graphs")
    p.add_argument("--check", action="append", metavar="NAME", help="check name, comma list, or 'all' (repeatable)")
    p.add_argument("--no-fast-paths", action="store_true", help=argparse.SUPPRESS)

    p = sub.add_parser("gen", parents=[common], help="emit a family instance")
    p.add_argument("family", metavar="SPEC")
    p.add_argument("--no-fast-paths", action="store_true", help=argparse.SUPPRESS)
    return parser


COMMANDS = {"chi": cmd_chi, "es": cmd_es, "sweep": cmd_sweep, "gen": cmd_gen}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    ns.check = getattr(ns, "check", None)
    logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    cfg = RunConfig.from_args(ns)
    try:
        return COMMANDS[cfg.command](cfg)
    except EdgelessGraphError as exc:
        print(f"es-kit: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except PreconditionError as exc:
        print(f"es-kit: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (EsKitError, ValueError) as exc:
        print(f"es-kit: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
