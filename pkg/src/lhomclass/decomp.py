"""Build graphs of L from basic graphs by disjoint union and adjunction.

``decompose`` returns a tree whose replay reproduces the input graph
exactly (original vertex names are kept in the leaves), or None when the
graph is not in L.  Mixed connected graphs are split by peeling off a basic
graph made of non-loops whose loop neighbours are all universal among the
loops, together with those universal loops.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import (
    Bipartition,
    Graph,
    GraphError,
    adjunction,
    complete_top,
    components,
    disjoint_union,
    induced,
    is_connected,
    universal_vertices,
)
from .patterns import is_basic_irreflexive


class DecompositionTree:
    kind = "?"

    def vertices(self) -> frozenset[str]:
        raise NotImplementedError

    def lines(self, depth: int = 0) -> list[str]:
        raise NotImplementedError

    def to_dict(self) -> dict:
        raise NotImplementedError

    def __str__(self) -> str:
        return "\n".join(self.lines())


@dataclass(frozen=True)
class SingleLoop(DecompositionTree):
    vertex: str
    kind = "SingleLoop"

    def vertices(self):
        return frozenset([self.vertex])

    def lines(self, depth=0):
        return ["  " * depth + f"SingleLoop {self.vertex}"]

    def to_dict(self):
        return {"kind": self.kind, "vertices": [self.vertex]}


@dataclass(frozen=True)
class BasicIrreflexive(DecompositionTree):
    graph: Graph
    kind = "BasicIrreflexive"

    def vertices(self):
        return frozenset(self.graph.vertices)

    def lines(self, depth=0):
        return ["  " * depth + f"BasicIrreflexive {{{' '.join(self.graph.vertices)}}}"]

    def to_dict(self):
        return {
            "kind": self.kind,
            "vertices": list(self.graph.vertices),
            "edges": [list(e) for e in self.graph.edge_list()],
        }


@dataclass(frozen=True)
class BasicCompleted(DecompositionTree):
    """A basic irreflexive ``base`` whose top class gets every edge and loop added."""

    base: Graph
    bottom: frozenset[str]
    top: frozenset[str]
    kind = "BasicCompleted"

    def vertices(self):
        return frozenset(self.base.vertices)

    def lines(self, depth=0):
        b, t = " ".join(sorted(self.bottom)), " ".join(sorted(self.top))
        return ["  " * depth + f"BasicCompleted B={{{b}}} T={{{t}}}"]

    def to_dict(self):
        return {
            "kind": self.kind,
            "bottom": sorted(self.bottom),
            "top": sorted(self.top),
            "edges": [list(e) for e in self.base.edge_list()],
        }


@dataclass(frozen=True)
class Union(DecompositionTree):
    children: tuple[DecompositionTree, ...]
    kind = "Union"

    def vertices(self):
        return frozenset().union(*(c.vertices() for c in self.children))

    def lines(self, depth=0):
        out = ["  " * depth + "Union"]
        for c in self.children:
            out += c.lines(depth + 1)
        return out

    def to_dict(self):
        return {"kind": self.kind, "children": [c.to_dict() for c in self.children]}


@dataclass(frozen=True)
class Adjunction(DecompositionTree):
    basic: DecompositionTree
    rest: DecompositionTree
    kind = "Adjunction"

    def vertices(self):
        return self.basic.vertices() | self.rest.vertices()

    def lines(self, depth=0):
        return ["  " * depth + "Adjunction"] + self.basic.lines(depth + 1) + self.rest.lines(depth + 1)

    def to_dict(self):
        return {"kind": self.kind, "basic": self.basic.to_dict(), "rest": self.rest.to_dict()}


BASIC_KINDS = (SingleLoop, BasicIrreflexive, BasicCompleted)


def is_basic(h: Graph) -> DecompositionTree | None:
    """Return the basic leaf describing ``h``, or None if ``h`` is not basic."""
    if not is_connected(h):
        raise GraphError("is_basic expects a connected graph")
    if len(h) == 0:
        return None
    if len(h) == 1 and h.is_loop(h.vertices[0]):
        return SingleLoop(h.vertices[0])
    if h.is_irreflexive():
        return BasicIrreflexive(h) if is_basic_irreflexive(h) else None
    top, bottom = h.loops(), h.nonloops()
    if any(not h.has_edge(s, t) for s in top for t in top):
        return None
    if any(h.adj[b] & bottom for b in bottom):
        return None
    base = Graph.build(h.vertices, (e for e in h.edges if not (e[0] in top and e[1] in top)))
    if not is_basic_irreflexive(base):
        return None
    return BasicCompleted(base, bottom, top)


def _remove(h: Graph, gone) -> Graph:
    return induced(h, set(h.vertices) - set(gone))


def _split_universal(h: Graph) -> DecompositionTree | None:
    us = universal_vertices(h)
    if not us:
        return None
    rest = decompose(_remove(h, [us[0]]))
    return None if rest is None else Adjunction(SingleLoop(us[0]), rest)


def _mixed_split(h: Graph) -> tuple[DecompositionTree, frozenset[str]] | None:
    """Find a basic B with h = B adjoined to (h - B), following the non-loop construction."""
    loops = h.loops()
    U = frozenset(universal_vertices(induced(h, loops)))
    if not U:
        return None
    J = [a for a in h.nonloops() if h.adj[a] & loops <= U]
    comps = components(induced(h, J)) if J else []
    if not comps:
        return None
    nbhd = []
    for comp in comps:
        common = U
        for a in comp:
            common = common & h.adj[a]
        nbhd.append(common)

    candidates = set()
    for start in range(len(comps)):
        chosen = {start}
        while True:
            low = frozenset().union(*(nbhd[i] for i in chosen))
            grow = {j for j in range(len(comps)) if j not in chosen and not low <= nbhd[j]}
            if not grow:
                break
            chosen |= grow
        candidates.add(tuple(sorted(chosen)))

    everything = frozenset(h.vertices)
    for chosen in sorted(candidates, key=lambda c: (len(c), c)):
        if len(chosen) > 1 and any(len(comps[i]) > 1 for i in chosen):
            continue
        B = frozenset().union(*(comps[i] | nbhd[i] for i in chosen))
        C = everything - B
        if not C:
            continue
        if any(not C <= h.adj[x] for x in B & loops):
            continue
        if any(h.adj[x] & C for x in B - loops):
            continue
        hb = induced(h, B)
        if not is_connected(hb):
            continue
        leaf = is_basic(hb)
        if leaf is not None:
            return leaf, B
    return None


def decompose(h: Graph) -> DecompositionTree | None:
    comps = components(h)
    if len(comps) != 1:
        children = []
        for comp in comps:
            sub = decompose(induced(h, comp))
            if sub is None:
                return None
            children.append(sub)
        return Union(tuple(children))
    leaf = is_basic(h)
    if leaf is not None:
        return leaf
    if h.is_irreflexive():
        return None
    if h.is_reflexive():
        return _split_universal(h)
    split = _mixed_split(h)
    if split is None:
        return _split_universal(h)
    leaf, B = split
    rest = decompose(_remove(h, B))
    return None if rest is None else Adjunction(leaf, rest)


def replay(t: DecompositionTree) -> Graph:
    if isinstance(t, SingleLoop):
        return Graph.build([t.vertex], [(t.vertex, t.vertex)])
    if isinstance(t, BasicIrreflexive):
        if not t.graph.is_irreflexive():
            raise GraphError("BasicIrreflexive leaf has a loop")
        return t.graph
    if isinstance(t, BasicCompleted):
        return complete_top(Bipartition(t.base, t.bottom, t.top))
    if isinstance(t, Union):
        out = Graph.build([])
        for c in t.children:
            out = disjoint_union(out, replay(c), rename=False)
        return out
    if isinstance(t, Adjunction):
        if not isinstance(t.basic, BASIC_KINDS):
            raise GraphError("first child of an adjunction must be a basic graph")
        return adjunction(replay(t.basic), replay(t.rest), rename=False)
    raise GraphError(f"malformed decomposition node {t!r}")


def leaves_are_basic(t: DecompositionTree) -> bool:
    """Re-check every leaf from scratch (connected and basic)."""
    if isinstance(t, Union):
        return all(leaves_are_basic(c) for c in t.children)
    if isinstance(t, Adjunction):
        return isinstance(t.basic, BASIC_KINDS) and leaves_are_basic(t.basic) and leaves_are_basic(t.rest)
    g = replay(t)
    return is_connected(g) and len(g) > 0 and is_basic(g) is not None


def validate_tree(h: Graph, t: DecompositionTree) -> bool:
    try:
        return replay(t) == h and leaves_are_basic(t)
    except GraphError:
        return False
