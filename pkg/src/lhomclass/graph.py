"""Finite undirected graphs with loops, and the operators used to build them.

A :class:`Graph` is immutable.  Vertices are opaque strings kept in sorted
order; an edge is an unordered pair stored as a sorted tuple, and a loop at
``v`` is the pair ``(v, v)``.  Operators that combine two graphs rename
vertices with the prefixes ``1.`` and ``2.`` so that the result is
reproducible; squares use the pair syntax ``(u,v)``.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from functools import cached_property
from itertools import product


class GraphError(ValueError):
    """Raised for malformed graphs or violated operator preconditions."""


class ParseError(GraphError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def _pair(u: str, v: str) -> tuple[str, str]:
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class Graph:
    vertices: tuple[str, ...]
    edges: frozenset[tuple[str, str]]

    def __post_init__(self):
        if list(self.vertices) != sorted(set(self.vertices)):
            raise GraphError("vertices must be unique and sorted")
        declared = set(self.vertices)
        for u, v in self.edges:
            if u not in declared or v not in declared:
                raise GraphError(f"edge {u}-{v} uses an undeclared vertex")
            if u > v:
                raise GraphError(f"edge {u}-{v} is not normalised")

    @classmethod
    def build(cls, vertices: Iterable[str], edges: Iterable[tuple[str, str]] = ()) -> Graph:
        """Make a graph from any vertex iterable and unordered edge pairs."""
        vs = set(vertices)
        if any(not isinstance(v, str) or not v or any(c.isspace() for c in v) for v in vs):
            raise GraphError("vertex names must be nonempty strings without whitespace")
        return cls(tuple(sorted(vs)), frozenset(_pair(u, v) for u, v in edges))

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def adj(self) -> dict[str, frozenset[str]]:
        nbrs: dict[str, set[str]] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return {v: frozenset(s) for v, s in nbrs.items()}

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Neighbourhood bitmasks over vertex indices (bit i set for a loop at i)."""
        idx = self.index
        out = [0] * len(self.vertices)
        for u, v in self.edges:
            out[idx[u]] |= 1 << idx[v]
            out[idx[v]] |= 1 << idx[u]
        return tuple(out)

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __contains__(self, v) -> bool:
        return v in self.index

    def has_edge(self, u: str, v: str) -> bool:
        return _pair(u, v) in self.edges

    def is_loop(self, v: str) -> bool:
        return (v, v) in self.edges

    def neighbours(self, v: str) -> frozenset[str]:
        return self.adj[v]

    def loops(self) -> frozenset[str]:
        return frozenset(u for u, v in self.edges if u == v)

    def nonloops(self) -> frozenset[str]:
        return frozenset(self.vertices) - self.loops()

    def edge_list(self) -> list[tuple[str, str]]:
        return sorted(self.edges)

    def is_reflexive(self) -> bool:
        return len(self.loops()) == len(self.vertices)

    def is_irreflexive(self) -> bool:
        return not self.loops()

    def degree(self, v: str) -> int:
        """Number of neighbours other than ``v`` itself."""
        return len(self.adj[v] - {v})

    def __str__(self) -> str:
        return serialize_graph(self)


@dataclass(frozen=True)
class Bipartition:
    graph: Graph
    bottom: frozenset[str]
    top: frozenset[str]

    def __post_init__(self):
        vs = frozenset(self.graph.vertices)
        if self.bottom | self.top != vs or self.bottom & self.top:
            raise GraphError("colour classes must partition the vertex set")
        for u, v in self.graph.edges:
            if not ((u in self.bottom and v in self.top) or (u in self.top and v in self.bottom)):
                raise GraphError(f"edge {u}-{v} does not join the two colour classes")


# -- text format ------------------------------------------------------------

def parse_graph(text: str) -> Graph:
    vertices: list[str] = []
    seen: set[str] = set()
    edges: list[tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "v" and len(parts) == 2:
            if parts[1] in seen:
                raise ParseError(lineno, f"duplicate vertex {parts[1]!r}")
            seen.add(parts[1])
            vertices.append(parts[1])
        elif parts[0] == "e" and len(parts) == 3:
            for name in parts[1:]:
                if name not in seen:
                    raise ParseError(lineno, f"undeclared vertex {name!r}")
            edges.append((parts[1], parts[2]))
        else:
            raise ParseError(lineno, f"cannot parse {raw.strip()!r}")
    return Graph.build(vertices, edges)


def serialize_graph(g: Graph) -> str:
    lines = [f"v {v}" for v in g.vertices]
    lines += [f"e {u} {v}" for u, v in g.edge_list()]
    return "\n".join(lines) + "\n"


# -- subgraphs and combinations ---------------------------------------------

def induced(g: Graph, s: Iterable[str]) -> Graph:
    keep = frozenset(s)
    if not keep <= frozenset(g.vertices):
        raise GraphError(f"not a subset of the vertices: {sorted(keep - set(g.vertices))}")
    return Graph(
        tuple(v for v in g.vertices if v in keep),
        frozenset(e for e in g.edges if e[0] in keep and e[1] in keep),
    )


def relabel(g: Graph, mapping) -> Graph:
    """Rename vertices through ``mapping`` (a dict or a callable); must be injective."""
    f = mapping if callable(mapping) else mapping.__getitem__
    names = {v: f(v) for v in g.vertices}
    if len(set(names.values())) != len(names):
        raise GraphError("relabelling is not injective")
    return Graph.build(names.values(), ((names[u], names[v]) for u, v in g.edges))


def _prefixed(g1: Graph, g2: Graph, rename: bool) -> tuple[Graph, Graph]:
    if rename:
        return relabel(g1, lambda v: "1." + v), relabel(g2, lambda v: "2." + v)
    if set(g1.vertices) & set(g2.vertices):
        raise GraphError("graphs are not vertex-disjoint")
    return g1, g2


def disjoint_union(g1: Graph, g2: Graph, *, rename: bool = True) -> Graph:
    a, b = _prefixed(g1, g2, rename)
    return Graph.build(a.vertices + b.vertices, a.edges | b.edges)


def special_sum(h1: Bipartition, h2: Bipartition) -> Graph:
    """Disjoint union of two bipartite graphs, joining all of ``h1.top`` to ``h2.bottom``."""
    if not h1.top or not h2.bottom:
        raise GraphError("special sum needs a nonempty top class in h1 and bottom class in h2")
    for h in (h1, h2):
        if not h.graph.is_irreflexive():
            raise GraphError("special sum operands must be irreflexive")
    a, b = _prefixed(h1.graph, h2.graph, True)
    join = [("1." + t, "2." + s) for t in h1.top for s in h2.bottom]
    out = Graph.build(a.vertices + b.vertices, set(a.edges | b.edges) | set(join))
    if is_bipartite(out) is None:
        raise GraphError("special sum result is not bipartite")
    return out


def adjunction(h1: Graph, h2: Graph, *, rename: bool = True) -> Graph:
    """Disjoint union plus an edge from every loop of ``h1`` to every vertex of ``h2``."""
    a, b = _prefixed(h1, h2, rename)
    join = [(x, y) for x in a.loops() for y in b.vertices]
    return Graph.build(a.vertices + b.vertices, set(a.edges | b.edges) | set(join))


def complete_top(bip: Bipartition) -> Graph:
    """Add every edge, loops included, inside the top colour class."""
    g = bip.graph
    extra = [(s, t) for s in bip.top for t in bip.top]
    return Graph.build(g.vertices, set(g.edges) | set(extra))


def direct_square(g: Graph) -> Graph:
    name = square_vertex
    edges = []
    for (u1, v1), (u2, v2) in product(g.edges, repeat=2):
        edges.append((name(u1, u2), name(v1, v2)))
        edges.append((name(u1, v2), name(v1, u2)))
    return Graph.build((name(u, v) for u, v in product(g.vertices, repeat=2)), edges)


def square_vertex(u: str, v: str) -> str:
    return f"({u},{v})"


# -- structure --------------------------------------------------------------

def components(g: Graph) -> list[frozenset[str]]:
    """Connected components, ordered by their smallest vertex."""
    seen: set[str] = set()
    out = []
    for v in g.vertices:
        if v in seen:
            continue
        comp = {v}
        stack = [v]
        while stack:
            for w in g.adj[stack.pop()]:
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        out.append(frozenset(comp))
    return out


def is_connected(g: Graph) -> bool:
    return len(components(g)) <= 1


def is_bipartite(g: Graph) -> Bipartition | None:
    """2-colour each component, the smallest vertex of each one going to the bottom."""
    if g.loops():
        return None
    colour: dict[str, int] = {}
    for comp in components(g):
        root = min(comp)
        colour[root] = 0
        stack = [root]
        while stack:
            u = stack.pop()
            for w in g.adj[u]:
                if w not in colour:
                    colour[w] = 1 - colour[u]
                    stack.append(w)
                elif colour[w] == colour[u]:
                    return None
    bottom = frozenset(v for v, c in colour.items() if c == 0)
    return Bipartition(g, bottom, frozenset(g.vertices) - bottom)


def universal_vertices(g: Graph) -> list[str]:
    """Vertices adjacent to every vertex, themselves included (so always loops)."""
    everything = frozenset(g.vertices)
    return [v for v in g.vertices if g.adj[v] == everything]


def is_isomorphic(g1: Graph, g2: Graph) -> dict[str, str] | None:
    """Return a vertex bijection g1 -> g2 preserving edges, non-edges and loops, or None."""
    if len(g1) != len(g2) or len(g1.edges) != len(g2.edges):
        return None

    def sig(g, v):
        return (g.is_loop(v), g.degree(v))

    if sorted(sig(g1, v) for v in g1) != sorted(sig(g2, v) for v in g2):
        return None
    # most constrained vertices first
    order = sorted(g1.vertices, key=lambda v: (-g1.degree(v), v))
    mapping: dict[str, str] = {}
    used: set[str] = set()

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        s = sig(g1, v)
        for w in g2.vertices:
            if w in used or sig(g2, w) != s:
                continue
            if all(g1.has_edge(v, x) == g2.has_edge(w, mapping[x]) for x in order[:i]):
                mapping[v] = w
                used.add(w)
                if extend(i + 1):
                    return True
                del mapping[v]
                used.discard(w)
        return False

    return dict(mapping) if extend(0) else None
