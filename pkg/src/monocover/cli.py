"""Command-line interface.

Subcommands mirror the library surface: ``adversarial build`` colours a
graph against a gadget hypergraph, ``coverability ...`` runs the checkers
and bounded searches, and ``lab ...`` drives the seeded experiments from a
JSON spec.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .adversarial import (assignment_from_independent_set, build_colouring,
                          find_incompatible_edge, verify_lower_bound)
from .coverability import (CoverFamily, SearchCaps, check_cover_family,
                           classify_intersecting_3graph, compute_extremal,
                           search_chain, search_cover_family)
from .fileio import read_cg, read_hg, save_cg, write_hg
from .graphs import Graph, find_sparse_independent_set
from .hypergraphs import cover_number
from .lab import ExperimentSpec, run


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _cmd_adversarial_build(args) -> int:
    g = read_cg(args.graph)
    if not isinstance(g, Graph):
        raise SystemExit("adversarial build expects an uncoloured graph "
                         "(header 'n 0')")
    h0 = read_hg(args.hypergraph)
    covers_edges = read_hg(args.covers).edges
    covers = CoverFamily(h0, args.k, covers_edges, mode="augmented")
    ok, counterexample = check_cover_family(covers)
    if not ok:
        raise SystemExit(f"cover family invalid: {counterexample}")
    iset = find_sparse_independent_set(
        g, len(h0.edges), args.k + 1, budget=args.find_budget)
    ea = assignment_from_independent_set(g, h0, iset, covers, args.k)
    assert find_incompatible_edge(g, ea) is None
    coloured = build_colouring(g, ea)
    save_cg(coloured, args.out)
    certificate = {
        "bound": cover_number(ea.target),
        "independent_set": sorted(iset),
        "target_part_sizes": list(ea.target.part_sizes),
        "target_edges": sorted(list(e) for e in ea.target.edges),
        "coloured_graph": args.out,
    }
    if args.verify_exact:
        report = verify_lower_bound(g, ea)
        certificate["exact_component_cover"] = report.bound
    text = json.dumps(certificate, indent=2, sort_keys=True) + "\n"
    _emit(text, args.certificate)
    return 0


def _cmd_check_kcovers(args) -> int:
    host = read_hg(args.hypergraph)
    if args.covers:
        family = CoverFamily(host, args.k, read_hg(args.covers).edges,
                             mode=args.mode)
        ok, counterexample = check_cover_family(family)
        payload = {"valid": ok,
                   "counterexample": None if ok else repr(counterexample)}
    else:
        family = search_cover_family(host, args.k, args.mode)
        payload = {"found": family is not None}
        if family is not None:
            payload["family"] = sorted(list(f) for f in family.family)
    _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.out)
    return 0


def _cmd_search_chain(args) -> int:
    host = read_hg(args.hypergraph)
    chain = search_chain(host, args.k, args.max_m)
    payload = {"found": chain is not None}
    if chain is not None:
        payload["m"] = chain.m
        payload["levels"] = [sorted(list(e) for e in lvl)
                             for lvl in chain.levels]
    _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.out)
    return 0


def _cmd_classify3(args) -> int:
    host = read_hg(args.hypergraph)
    outcome = classify_intersecting_3graph(host)
    name = type(outcome).__name__
    payload = {"case": {"CommonVertex": "common-vertex",
                        "CoreTriple": "core-triple",
                        "ParityQuad": "parity-quad"}[name]}
    if name == "CommonVertex":
        payload["vertex"] = list(outcome.vertex)
    elif name == "CoreTriple":
        payload["vertices"] = [list(v) for v in outcome.vertices]
    else:
        payload["isomorphism"] = [[list(a), list(b)]
                                  for a, b in outcome.isomorphism]
    _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.out)
    return 0


def _cmd_extremal(args) -> int:
    caps = SearchCaps(max_part=args.max_part, max_edges=args.max_edges)
    parameter = args.t if args.quantity == "kc" else args.k
    if parameter is None:
        raise SystemExit("hi/Hi need --k; kc needs --t")
    report = compute_extremal(args.quantity, args.r, parameter, caps)
    _emit(json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n",
          args.out)
    return 0


def _cmd_lab(args) -> int:
    spec = ExperimentSpec.from_json(Path(args.spec).read_text())
    expected = {"sweep": "adversarial-sweep", "oracle": "oracle-corpus",
                "ladder": "property-audit"}[args.lab_command]
    if spec.kind != expected:
        raise SystemExit(
            f"spec kind {spec.kind!r} does not match 'lab {args.lab_command}'")
    text = run(spec, parallelism=args.parallelism)
    _emit(text, args.out or spec.output)
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="monocover",
        description="Component covers of coloured graphs and partite "
                    "hypergraph covers: exact tools and seeded experiments.")
    sub = parser.add_subparsers(dest="command", required=True)

    adv = sub.add_parser("adversarial",
                         help="lower-bound colouring construction")
    adv_sub = adv.add_subparsers(dest="adversarial_command", required=True)
    build = adv_sub.add_parser(
        "build", help="colour a graph so that many components are needed")
    build.add_argument("--graph", required=True, help=".cg file, uncoloured")
    build.add_argument("--hypergraph", required=True, help=".hg gadget")
    build.add_argument("--covers", required=True,
                       help=".hg file with the fixed cover family")
    build.add_argument("--k", type=int, required=True,
                       help="cover arity of the gadget family")
    build.add_argument("--out", required=True, help="output .cg path")
    build.add_argument("--certificate", help="bound certificate JSON path")
    build.add_argument("--find-budget", type=int, default=200_000)
    build.add_argument("--verify-exact", action="store_true",
                       help="also solve the component cover exactly")
    build.set_defaults(func=_cmd_adversarial_build)

    cov = sub.add_parser("coverability",
                         help="cover families, chains, classification")
    cov_sub = cov.add_subparsers(dest="coverability_command", required=True)

    ck = cov_sub.add_parser("check-kcovers",
                            help="check or search an intersecting k-cover "
                                 "family")
    ck.add_argument("--hypergraph", required=True)
    ck.add_argument("--covers", help="family .hg; omit to search instead")
    ck.add_argument("--k", type=int, required=True)
    ck.add_argument("--mode", choices=("strict", "augmented"),
                    default="strict")
    ck.add_argument("--out")
    ck.set_defaults(func=_cmd_check_kcovers)

    sc = cov_sub.add_parser("search-chain", help="find a nested cover chain")
    sc.add_argument("--hypergraph", required=True)
    sc.add_argument("--k", type=int, required=True)
    sc.add_argument("--max-m", type=int, default=None)
    sc.add_argument("--out")
    sc.set_defaults(func=_cmd_search_chain)

    cl = cov_sub.add_parser("classify3",
                            help="classify a pairwise-intersecting "
                                 "3-partite 3-graph")
    cl.add_argument("--hypergraph", required=True)
    cl.add_argument("--out")
    cl.set_defaults(func=_cmd_classify3)

    ex = cov_sub.add_parser("extremal", help="bounded extremal computation")
    ex.add_argument("--quantity", choices=("hi", "Hi", "kc"), required=True)
    ex.add_argument("--r", type=int, required=True)
    ex.add_argument("--k", type=int)
    ex.add_argument("--t", type=int)
    ex.add_argument("--max-part", type=int, required=True)
    ex.add_argument("--max-edges", type=int, required=True)
    ex.add_argument("--out")
    ex.set_defaults(func=_cmd_extremal)

    lab = sub.add_parser("lab", help="seeded experiments from a JSON spec")
    lab_sub = lab.add_subparsers(dest="lab_command", required=True)
    for name, help_text in (
            ("sweep", "adversarial sweep over n and p"),
            ("oracle", "exact oracle corpus"),
            ("ladder", "property audit with the multiplicity ladder")):
        cmd = lab_sub.add_parser(name, help=help_text)
        cmd.add_argument("--spec", required=True, help="spec JSON file")
        cmd.add_argument("--out", help="output path (defaults to the spec's)")
        cmd.add_argument("--parallelism", type=int, default=1)
        cmd.set_defaults(func=_cmd_lab)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
