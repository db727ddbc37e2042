"""Command line entry point: ``lhomclass <command> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .classify import classify, validate_report
from .decomp import decompose
from .fo import dismantle_square, fo_certificate, greedy_dismantle
from .gadgets import gadget_report
from .graph import GraphError, parse_graph
from .patterns import find_pattern
from .polymorphisms import DEFAULT_BUDGET, find_conservative_majority, find_permutability_chain
from .solver import Budget, SearchExhausted, parse_instance, solve
from .sweep import CHECKS, sweep


def _load(path: str):
    return parse_graph(Path(path).read_text(encoding="utf-8"))


def cmd_classify(args) -> int:
    rep = classify(_load(args.file), args.budget, with_chain=not args.no_chain, timings=args.timings)
    problems = validate_report(rep)
    if args.json:
        print(rep.to_json())
    else:
        print(rep.verdict)
        d = rep.to_dict()
        print(f"majority: {rep.majority_status}")
        if rep.witness is not None:
            print(f"pattern: {rep.witness.pattern}")
        if rep.hardness is not None:
            print(f"gadget: {d['evidence']['gadget']['verdict']}")
        if rep.tree is not None:
            print("decomposition:")
            print("\n".join(rep.tree.lines(1)))
        if rep.chain_status != "skipped":
            print(f"chain: {rep.chain_status}")
        if rep.fo_certificate is not None:
            print(f"dismantling: {len(rep.dismantling.steps)} steps")
        for note in rep.notes:
            print(f"note: {note}")
    for p in problems:
        print(f"validation: {p}", file=sys.stderr)
    return 1 if problems else 0


def cmd_sweep(args) -> int:
    checks = [c for c in args.checks.split(",") if c] if args.checks else list(CHECKS)
    rep = sweep(args.max_n, checks, parallel=args.parallel, dedup=args.dedup, budget=args.budget)
    if args.json:
        print(json.dumps(rep.to_dict(), indent=2, sort_keys=True))
    else:
        for k, v in sorted(rep.graphs.items()):
            print(f"n={k}: {v} graphs")
        for verdict, count in sorted(rep.verdicts.items()):
            print(f"{verdict}: {count}")
        print(f"divergences: {len(rep.divergences)}")
        for d in rep.divergences:
            print(f"  [{d['check']}] n={d['n']} code={d['code']}: {d['detail']}")
        print(f"exhausted: {len(rep.exhausted)}")
    return 1 if rep.divergences else 0


def cmd_patterns(args) -> int:
    w = find_pattern(_load(args.file))
    print("in-L" if w is None else "\n".join(w.lines()))
    return 0


def cmd_decompose(args) -> int:
    h = _load(args.file)
    tree = decompose(h)
    if tree is not None:
        print(tree)
        return 0
    print("not-in-L")
    w = find_pattern(h)
    if w is not None:
        print("\n".join(w.lines()))
    return 1


def _search_cmd(search, args, render) -> int:
    h = _load(args.file)
    try:
        found = search(h, Budget(args.budget))
    except SearchExhausted:
        print("exhausted")
        return 2
    if found is None:
        print("none")
        return 1
    print("found")
    print("\n".join(render(found)))
    return 0


def cmd_majority(args) -> int:
    return _search_cmd(find_conservative_majority, args, lambda t: t.lines("f"))


def cmd_chain(args) -> int:
    return _search_cmd(find_permutability_chain, args, lambda c: c.lines())


def cmd_fo(args) -> int:
    h = _load(args.file)
    seq = dismantle_square(h)
    if seq is not None and fo_certificate(h) is not None:
        print("FO")
        print("\n".join(seq.lines()))
        return 0
    print("not-FO")
    if seq is None:
        _, live = greedy_dismantle(h)
        stuck = sorted(p for p in live if p[0] != p[1])
        print("stuck: " + " ".join(f"({a},{b})" for a, b in stuck))
    else:
        print("note: dismantling succeeded but the structural test failed")
    return 1


def cmd_solve(args) -> int:
    h = _load(args.template)
    inst = parse_instance(Path(args.instance).read_text(encoding="utf-8"))
    a = solve(h, inst)
    if a is None:
        print("unsat")
        return 1
    print("sat")
    for v in inst.variables:
        print(f"{v} -> {a[v]}")
    return 0


def cmd_gadget(args) -> int:
    g, ev = gadget_report(args.pattern)
    print(g.text())
    print(" ".join(f"({a},{b})" for a, b in sorted(ev.relation)))
    suffix = f" {' '.join(ev.elements)}" if ev.elements else ""
    print(ev.verdict + suffix)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lhomclass", description="Complexity of list homomorphism for a graph.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="FO / L-complete / NL-complete / NP-complete with evidence")
    p.add_argument("file")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--json", action="store_true")
    p.add_argument("--timings", action="store_true", help="add elapsed_ms to the report")
    p.add_argument("--no-chain", action="store_true", help="skip the permutability chain search")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("sweep", help="cross-check all labelled graphs up to --max-n vertices")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--checks", default="", help="comma separated: " + ",".join(CHECKS))
    p.add_argument("--parallel", type=int, default=1)
    p.add_argument("--dedup", action="store_true", help="one graph per isomorphism class")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_sweep)

    for name, func, helptext in (
        ("patterns", cmd_patterns, "find a forbidden induced subgraph"),
        ("decompose", cmd_decompose, "decomposition tree for a graph in L"),
        ("fo", cmd_fo, "first-order definability via dismantling"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("file")
        p.set_defaults(func=func)

    for name, func in (("majority", cmd_majority), ("chain", cmd_chain)):
        p = sub.add_parser(name, help=f"search for a conservative {name}")
        p.add_argument("file")
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
        p.set_defaults(func=func)

    p = sub.add_parser("solve", help="solve a list homomorphism instance")
    p.add_argument("template")
    p.add_argument("instance")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("gadget", help="evaluate a builtin hardness gadget")
    p.add_argument("pattern")
    p.set_defaults(func=cmd_gadget)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GraphError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
