"""The twelve forbidden induced subgraphs and membership in the class L.

A graph is in L when none of the catalogue graphs occurs in it as an
induced subgraph.  Loop status is part of the pattern: a looped host vertex
can only play a looped pattern vertex and vice versa.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, GraphError, is_bipartite


def _g(vertices: str | list[str], edges: str, loops: str | list[str] = ()) -> Graph:
    vs = list(vertices)
    es = [tuple(e.split("-")) for e in edges.split()]
    es += [(v, v) for v in loops]
    return Graph.build(vs, es)


def _cycle(k: int) -> Graph:
    vs = "abcdef"[:k]
    return Graph.build(vs, [(vs[i], vs[(i + 1) % k]) for i in range(k)])


_B5_VERTICES = ["a", "b", "c", "a'", "b'", "c'"]
_B5_EDGES = "a-b b-c a-c a'-a b'-a b'-b c'-b c'-c"

CATALOGUE: dict[str, Graph] = {
    "ReflP3": _g("abcd", "a-b b-c c-d", "abcd"),
    "ReflC4": _g("abcd", "a-b b-c c-d d-a", "abcd"),
    "IrrC3": _cycle(3),
    "IrrC5": _cycle(5),
    "IrrC6": _cycle(6),
    "IrrP5": _g("abcdef", "a-b b-c c-d d-e e-f"),
    "B1": _g("abc", "a-b b-c", "c"),
    "B2": _g("abc", "a-b b-c", "ac"),
    "B3": _g("abcd", "a-b b-c c-d", "bcd"),
    "B4": _g("abcde", "a-b b-c c-d d-e a-c", "cd"),
    "B5": _g(_B5_VERTICES, _B5_EDGES, "abc"),
    "B6": _g(_B5_VERTICES, _B5_EDGES + " a'-c", "abc"),
}

PATTERN_NAMES = tuple(CATALOGUE)


@dataclass(frozen=True)
class Pattern:
    name: str
    graph: Graph


def pattern(name: str) -> Pattern:
    try:
        return Pattern(name, CATALOGUE[name])
    except KeyError:
        raise GraphError(f"unknown pattern {name!r}") from None


@dataclass(frozen=True)
class PatternWitness:
    """An induced embedding of a catalogue pattern; ``mapping`` pairs are in pattern-vertex order."""

    pattern: str
    mapping: tuple[tuple[str, str], ...]

    def as_dict(self) -> dict[str, str]:
        return dict(self.mapping)

    def image(self) -> frozenset[str]:
        return frozenset(h for _, h in self.mapping)

    def lines(self) -> list[str]:
        return [f"{self.pattern}: {p}→{h}" for p, h in self.mapping]


def is_induced_embedding(p: Graph, h: Graph, mapping: dict[str, str]) -> bool:
    """Check injectivity and exact preservation of edges, non-edges and loop status."""
    if set(mapping) != set(p.vertices) or len(set(mapping.values())) != len(mapping):
        return False
    if not all(x in h for x in mapping.values()):
        return False
    pv = p.vertices
    for i, u in enumerate(pv):
        for w in pv[i:]:
            if p.has_edge(u, w) != h.has_edge(mapping[u], mapping[w]):
                return False
    return True


def validate_witness(h: Graph, w: PatternWitness) -> bool:
    return w.pattern in CATALOGUE and is_induced_embedding(CATALOGUE[w.pattern], h, w.as_dict())


def _embed(p: Graph, h: Graph) -> list[int] | None:
    """First induced embedding in lexicographic order of host indices, or None."""
    k, n = len(p), len(h)
    if k > n:
        return None
    pm, hm = p.masks, h.masks
    ploop = [(pm[i] >> i) & 1 for i in range(k)]
    hloop = [(hm[j] >> j) & 1 for j in range(n)]
    pdeg = [bin(pm[i] & ~(1 << i)).count("1") for i in range(k)]
    hdeg = [bin(hm[j] & ~(1 << j)).count("1") for j in range(n)]
    cands = [[j for j in range(n) if hloop[j] == ploop[i] and hdeg[j] >= pdeg[i]] for i in range(k)]
    assign: list[int] = []

    def extend(i: int) -> bool:
        if i == k:
            return True
        row = pm[i]
        for j in cands[i]:
            if j in assign:
                continue
            hj = hm[j]
            ok = True
            for q, jq in enumerate(assign):
                if ((row >> q) & 1) != ((hj >> jq) & 1):
                    ok = False
                    break
            if ok:
                assign.append(j)
                if extend(i + 1):
                    return True
                assign.pop()
        return False

    return assign if extend(0) else None


def find_pattern(h: Graph, names=PATTERN_NAMES) -> PatternWitness | None:
    """First catalogue pattern (in catalogue order) occurring induced in ``h``."""
    for name in names:
        p = CATALOGUE[name]
        found = _embed(p, h)
        if found is not None:
            return PatternWitness(name, tuple((p.vertices[i], h.vertices[j]) for i, j in enumerate(found)))
    return None


def in_class_L(h: Graph) -> bool:
    return find_pattern(h) is None


def is_basic_irreflexive(h: Graph) -> bool:
    """Bipartite with no induced 6-cycle and no induced path with 5 edges."""
    if not h.is_irreflexive():
        raise GraphError("is_basic_irreflexive expects an irreflexive graph")
    return is_bipartite(h) is not None and find_pattern(h, ("IrrC6", "IrrP5")) is None
