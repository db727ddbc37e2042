"""Exhaustive cross-checks over every labelled loop-graph on at most n vertices."""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations, permutations, product

from .classify import classify, validate_report
from .decomp import decompose, replay
from .fo import dismantle_square, dominates, dominates_bruteforce, fo_structural, validate_dismantling
from .graph import Graph, GraphError, components, induced, is_isomorphic, serialize_graph, universal_vertices
from .patterns import in_class_L
from .polymorphisms import (
    find_conservative_majority,
    find_permutability_chain,
    is_conservative_majority,
    verify_chain,
)
from .solver import (
    Budget,
    ListInstance,
    SearchExhausted,
    arc_consistency,
    enumerate_endpoint_relation,
    is_solution,
    solve,
)

MAX_N = 6

CHECKS = (
    "pattern-decompose",
    "reflexive-universal",
    "chain-L",
    "majority-L",
    "fo-dismantle",
    "domination",
    "solver",
    "classify",
)
DEFAULT_CHECKS = CHECKS


def _pairs(k: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(k) for j in range(i, k)]


def graph_from_code(k: int, code: int) -> Graph:
    """The labelled graph on vertices "0".."k-1" whose edge bits are ``code``."""
    names = [str(i) for i in range(k)]
    edges = [(names[i], names[j]) for b, (i, j) in enumerate(_pairs(k)) if (code >> b) & 1]
    return Graph.build(names, edges)


def count_graphs(k: int) -> int:
    return 1 << (k * (k + 1) // 2)


def canonical_code(k: int, code: int) -> int:
    pairs = _pairs(k)
    pos = {p: b for b, p in enumerate(pairs)}
    edges = [p for b, p in enumerate(pairs) if (code >> b) & 1]
    best = None
    for perm in permutations(range(k)):
        c = 0
        for i, j in edges:
            a, b = perm[i], perm[j]
            c |= 1 << pos[(a, b) if a <= b else (b, a)]
        if best is None or c < best:
            best = c
    return best


# -- individual oracles -----------------------------------------------------

def brute_solutions(h: Graph, inst: ListInstance) -> list[dict[str, str]]:
    out = []
    vs = inst.variables
    for values in product(*(sorted(inst.lists[v]) for v in vs)):
        a = dict(zip(vs, values))
        if all(h.has_edge(a[x], a[y]) for x, y in inst.constraints):
            out.append(a)
    return out


def random_instance(rng: random.Random, h: Graph, max_vars: int = 5) -> ListInstance:
    nv = rng.randint(0, max_vars)
    names = [f"x{i}" for i in range(nv)]
    lists = {v: [a for a in h.vertices if rng.random() < 0.6] for v in names}
    pairs = [(x, y) for i, x in enumerate(names) for y in names[i:]]
    p = rng.choice([0.2, 0.4, 0.7])
    cons = [c for c in pairs if rng.random() < p]
    return ListInstance.build(lists, cons)


def check_solver_instance(h: Graph, inst: ListInstance) -> list[str]:
    """Compare solve, arc consistency and endpoint relations against brute force."""
    problems = []
    sols = brute_solutions(h, inst)
    got = solve(h, inst)
    if (got is None) != (not sols):
        problems.append("solve disagrees with brute force on satisfiability")
    if got is not None and not is_solution(h, inst, got):
        problems.append("solve returned an invalid assignment")
    ac = arc_consistency(h, inst)
    if ac is None:
        if sols:
            problems.append("arc consistency wiped out a satisfiable instance")
    else:
        for s in sols:
            if any(s[v] not in ac.lists[v] for v in inst.variables):
                problems.append("arc consistency removed a value used by a solution")
                break
        for x, y in inst.constraints:
            for a, b in ((x, y), (y, x)):
                for val in ac.lists[a]:
                    if a == b and not h.is_loop(val):
                        problems.append("arc consistency kept an unsupported value")
                    elif a != b and not any(h.has_edge(val, w) for w in ac.lists[b]):
                        problems.append("arc consistency kept an unsupported value")
    vs = inst.variables
    if vs:
        for s1, s2 in {(vs[0], vs[-1]), (vs[-1], vs[0]), (vs[0], vs[0])}:
            want = {(s[s1], s[s2]) for s in sols}
            if enumerate_endpoint_relation(h, inst, s1, s2) != want:
                problems.append(f"endpoint relation ({s1},{s2}) differs from brute force")
            if enumerate_endpoint_relation(h, inst, s1, s2, use_path=False) != want:
                problems.append(f"enumerated endpoint relation ({s1},{s2}) differs from brute force")
    return problems


def universal_small_subgraphs(h: Graph) -> bool:
    """Every connected induced subgraph on at most 4 vertices has a universal vertex."""
    for k in range(1, min(4, len(h)) + 1):
        for s in combinations(h.vertices, k):
            sub = induced(h, s)
            if len(components(sub)) == 1 and not universal_vertices(sub):
                return False
    return True


def domination_matches(h: Graph) -> bool:
    """Shortcut vs literal domination on every diagonal-containing live set of the square."""
    diag = {(v, v) for v in h.vertices}
    off = [p for p in product(h.vertices, repeat=2) if p[0] != p[1]]
    for k in range(len(off) + 1):
        for kept in combinations(off, k):
            live = diag | set(kept)
            for p in live:
                for q in live:
                    if p != q and dominates(h, live, p, q) != dominates_bruteforce(h, live, p, q):
                        return False
    return True


# -- per-graph driver -------------------------------------------------------

def run_checks(h: Graph, checks, budget: int, seed: int = 0) -> tuple[list[tuple[str, str]], str | None, list[str]]:
    """Returns (divergences as (check, detail), verdict or None, exhausted check names)."""
    bad: list[tuple[str, str]] = []
    exhausted: list[str] = []
    verdict = None
    member = in_class_L(h)

    if "pattern-decompose" in checks:
        tree = decompose(h)
        if (tree is not None) != member:
            bad.append(("pattern-decompose", f"in_class_L={member} decompose={tree is not None}"))
        elif tree is not None:
            try:
                back = replay(tree)
            except GraphError as exc:
                bad.append(("pattern-decompose", f"replay failed: {exc}"))
            else:
                if back != h or is_isomorphic(back, h) is None:
                    bad.append(("pattern-decompose", "replay does not reproduce the graph"))

    if "reflexive-universal" in checks and h.is_reflexive():
        if (decompose(h) is not None) != universal_small_subgraphs(h):
            bad.append(("reflexive-universal", "decomposition and universal-vertex test disagree"))

    if "chain-L" in checks:
        try:
            c = find_permutability_chain(h, Budget(budget))
        except SearchExhausted:
            exhausted.append("chain-L")
        else:
            if (c is not None) != member:
                bad.append(("chain-L", f"in_class_L={member} chain={c is not None}"))
            elif c is not None and not verify_chain(h, c):
                bad.append(("chain-L", "chain fails verification"))

    if "majority-L" in checks:
        try:
            m = find_conservative_majority(h, Budget(budget))
        except SearchExhausted:
            exhausted.append("majority-L")
        else:
            if m is not None and not is_conservative_majority(h, m):
                bad.append(("majority-L", "majority table fails verification"))
            if member and m is None:
                bad.append(("majority-L", "graph in L without a conservative majority"))

    if "fo-dismantle" in checks:
        fwd, rev = dismantle_square(h), dismantle_square(h, reverse=True)
        s = fo_structural(h)
        if not (s == (fwd is not None) == (rev is not None)):
            bad.append(("fo-dismantle", f"structural={s} forward={fwd is not None} reverse={rev is not None}"))
        for seq in (fwd, rev):
            if seq is not None and not validate_dismantling(h, seq):
                bad.append(("fo-dismantle", "dismantling sequence fails re-validation"))

    if "domination" in checks and len(h) <= 3:
        if not domination_matches(h):
            bad.append(("domination", "shortcut and brute-force domination disagree"))

    if "solver" in checks and len(h) <= 4:
        rng = random.Random(seed)
        for _ in range(3):
            inst = random_instance(rng, h)
            for p in check_solver_instance(h, inst):
                bad.append(("solver", p))

    if "classify" in checks:
        rep = classify(h, budget)
        verdict = rep.verdict
        if verdict == "inconclusive":
            exhausted.append("classify")
        for p in validate_report(rep):
            bad.append(("classify", p))
    return bad, verdict, exhausted


def _work(args):
    k, code, checks, budget = args
    h = graph_from_code(k, code)
    bad, verdict, exhausted = run_checks(h, checks, budget, seed=(k << 32) | code)
    return k, code, bad, verdict, exhausted


@dataclass
class SweepReport:
    max_n: int
    checks: tuple[str, ...]
    graphs: dict[int, int] = field(default_factory=dict)
    verdicts: Counter = field(default_factory=Counter)
    divergences: list[dict] = field(default_factory=list)
    exhausted: list[dict] = field(default_factory=list)

    @property
    def total(self) -> int:
        return sum(self.graphs.values())

    def to_dict(self) -> dict:
        return {
            "max_n": self.max_n,
            "checks": list(self.checks),
            "graphs": {str(k): v for k, v in sorted(self.graphs.items())},
            "total": self.total,
            "verdicts": dict(sorted(self.verdicts.items())),
            "divergences": self.divergences,
            "exhausted": self.exhausted,
        }


def sweep(
    n: int,
    checks=DEFAULT_CHECKS,
    *,
    parallel: int = 1,
    dedup: bool = False,
    budget: int = 10**8,
    min_n: int = 1,
) -> SweepReport:
    if n > MAX_N:
        raise ValueError(f"sweeps are capped at {MAX_N} vertices")
    unknown = set(checks) - set(CHECKS)
    if unknown:
        raise ValueError(f"unknown checks {sorted(unknown)}")
    checks = tuple(c for c in CHECKS if c in set(checks))
    jobs = []
    for k in range(min_n, n + 1):
        codes = range(count_graphs(k))
        if dedup:
            codes = sorted({canonical_code(k, c) for c in codes})
        jobs += [(k, c, checks, budget) for c in codes]

    if parallel > 1:
        from multiprocessing import Pool

        with Pool(parallel) as pool:
            results = pool.map(_work, jobs, chunksize=64)
    else:
        results = map(_work, jobs)

    rep = SweepReport(n, checks)
    for k, code, bad, verdict, exhausted in results:
        rep.graphs[k] = rep.graphs.get(k, 0) + 1
        if verdict is not None:
            rep.verdicts[verdict] += 1
        graph_text = None
        for check, detail in bad:
            graph_text = graph_text or serialize_graph(graph_from_code(k, code))
            rep.divergences.append({"check": check, "n": k, "code": code, "detail": detail, "graph": graph_text})
        for check in exhausted:
            rep.exhausted.append({"check": check, "n": k, "code": code})
    return rep
