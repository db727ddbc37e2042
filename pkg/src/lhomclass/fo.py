"""First-order definability of list homomorphism, decided two ways.

``dismantle_square`` greedily removes dominated off-diagonal pairs from the
square of the list structure; ``fo_structural`` checks the loop-clique,
independent non-loops, and nested-neighbourhood conditions directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import chain, combinations, product

from .graph import Graph, GraphError

Pair = tuple[str, str]


def square_adjacent(h: Graph, p: Pair, q: Pair) -> bool:
    return h.has_edge(p[0], q[0]) and h.has_edge(p[1], q[1])


def dominates(h: Graph, live: set[Pair] | frozenset[Pair], p: Pair, q: Pair) -> bool:
    """Whether ``q`` dominates ``p`` in the square induced on ``live``.

    Only the smallest list containing both coordinates of ``p`` matters for
    the unary relations, so ``q`` must have both coordinates in that list.
    """
    if p not in live or q not in live:
        raise GraphError("pairs must be live")
    if p == q:
        return False
    allowed = {p[0], p[1]}
    if q[0] not in allowed or q[1] not in allowed:
        return False
    return all(square_adjacent(h, q, r) for r in live if square_adjacent(h, p, r))


def dominates_bruteforce(h: Graph, live, p: Pair, q: Pair) -> bool:
    """Literal domination over every relation of the square of the list structure.

    Every subset S of the vertices gives the unary relation S x S; the binary
    relation is componentwise adjacency.  Replacing any nonempty set of
    occurrences of ``p`` by ``q`` in any tuple must stay inside the relation.
    """
    subsets = chain.from_iterable(combinations(h.vertices, k) for k in range(len(h) + 1))
    for s in subsets:
        s = set(s)
        if p[0] in s and p[1] in s and not (q[0] in s and q[1] in s):
            return False
    for r in live:
        for tup in ((p, r), (r, p)):
            if not square_adjacent(h, *tup):
                continue
            slots = [i for i, x in enumerate(tup) if x == p]
            for k in range(1, len(slots) + 1):
                for chosen in combinations(slots, k):
                    new = [q if i in chosen else x for i, x in enumerate(tup)]
                    if not all(x in live for x in new) or not square_adjacent(h, *new):
                        return False
    return True


@dataclass(frozen=True)
class DismantlingSequence:
    steps: tuple[tuple[Pair, Pair], ...]  # (removed pair, dominating pair)

    def lines(self) -> list[str]:
        return [f"({a},{b}) by ({c},{d})" for (a, b), (c, d) in self.steps]

    def to_list(self) -> list:
        return [[list(a), list(b)] for a, b in self.steps]


def greedy_dismantle(h: Graph, reverse: bool = False) -> tuple[list[tuple[Pair, Pair]], set[Pair]]:
    """Remove dominated off-diagonal pairs until stuck; returns (steps, live pairs left)."""
    live = set(product(h.vertices, repeat=2))
    off = sorted((p for p in live if p[0] != p[1]), reverse=reverse)
    steps = []
    progress = True
    while progress:
        progress = False
        for p in off:
            if p not in live:
                continue
            a, b = p
            for q in ((a, a), (a, b), (b, a), (b, b)):
                if q != p and q in live and dominates(h, live, p, q):
                    steps.append((p, q))
                    live.discard(p)
                    progress = True
                    break
            if progress:
                break
    return steps, live


def dismantle_square(h: Graph, reverse: bool = False) -> DismantlingSequence | None:
    steps, live = greedy_dismantle(h, reverse)
    if any(a != b for a, b in live):
        return None
    return DismantlingSequence(tuple(steps))


def validate_dismantling(h: Graph, seq: DismantlingSequence, brute: bool = False) -> bool:
    live = set(product(h.vertices, repeat=2))
    removed = [p for p, _ in seq.steps]
    if sorted(removed) != sorted(p for p in live if p[0] != p[1]):
        return False
    check = dominates_bruteforce if brute else dominates
    for p, q in seq.steps:
        if q not in live or p not in live or not check(h, live, p, q):
            return False
        live.discard(p)
    return True


@dataclass(frozen=True)
class FOCertificate:
    loops: tuple[str, ...]
    chain: tuple[str, ...]  # non-loops, neighbourhoods increasing

    def to_dict(self) -> dict:
        return {"loops": list(self.loops), "nonloop_chain": list(self.chain)}


def fo_certificate(h: Graph) -> FOCertificate | None:
    loops = sorted(h.loops())
    nonloops = sorted(h.nonloops())
    if any(not h.has_edge(u, v) for u in loops for v in loops):
        return None
    if any(h.has_edge(u, v) for u in nonloops for v in nonloops):
        return None
    chain_ = sorted(nonloops, key=lambda v: (len(h.adj[v]), v))
    for x, y in zip(chain_, chain_[1:]):
        if not h.adj[x] <= h.adj[y]:
            return None
    return FOCertificate(tuple(loops), tuple(chain_))


def fo_structural(h: Graph) -> bool:
    return fo_certificate(h) is not None


def validate_fo_certificate(h: Graph, cert: FOCertificate) -> bool:
    if set(cert.loops) != h.loops() or sorted(cert.chain) != sorted(h.nonloops()):
        return False
    if any(not h.has_edge(u, v) for u in cert.loops for v in cert.loops):
        return False
    if any(h.has_edge(u, v) for u in cert.chain for v in cert.chain):
        return False
    return all(h.adj[x] <= h.adj[y] for x, y in zip(cert.chain, cert.chain[1:]))
