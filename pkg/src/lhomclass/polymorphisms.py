"""Conservative ternary polymorphisms: majority operations and 4-permutability chains.

Both searches are list-homomorphism instances over the template itself:
every table entry that the identities leave free becomes a variable whose
list is the set of its arguments, and two entries at coordinatewise
adjacent triples must take adjacent values.  Entries fixed by the
identities are folded in as constants before the search starts.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from itertools import product

from .graph import Graph, GraphError, induced
from .solver import Budget, solve_masks

DEFAULT_BUDGET = 10**8

Triple = tuple[str, str, str]


@dataclass(frozen=True)
class TernaryTable:
    domain: tuple[str, ...]
    values: Mapping[Triple, str] = field(hash=False)

    def __call__(self, x: str, y: str, z: str) -> str:
        return self.values[(x, y, z)]

    def rows(self) -> list[tuple[str, str, str, str]]:
        return [(x, y, z, self.values[(x, y, z)]) for x, y, z in product(self.domain, repeat=3)]

    def is_total(self) -> bool:
        return set(self.values) == set(product(self.domain, repeat=3))

    def is_conservative(self) -> bool:
        return all(v in t for t, v in self.values.items())

    def is_majority(self) -> bool:
        d = self.domain
        return all(self(x, x, y) == self(x, y, x) == self(y, x, x) == x for x in d for y in d)

    def restrict(self, subset: Iterable[str]) -> TernaryTable:
        """The table on subset³; defined for conservative tables only."""
        s = tuple(v for v in self.domain if v in set(subset))
        return TernaryTable(s, {t: self.values[t] for t in product(s, repeat=3)})

    def lines(self, name: str = "f") -> list[str]:
        return [f"{name} {x} {y} {z} -> {v}" for x, y, z, v in self.rows()]

    def to_rows(self) -> list[list[str]]:
        return [list(r) for r in self.rows()]


@dataclass(frozen=True)
class PermutabilityChain:
    f1: TernaryTable
    f2: TernaryTable
    f3: TernaryTable

    def tables(self) -> tuple[TernaryTable, TernaryTable, TernaryTable]:
        return (self.f1, self.f2, self.f3)

    def lines(self) -> list[str]:
        out = []
        for i, t in enumerate(self.tables(), 1):
            out += t.lines(f"f{i}")
        return out


def _oriented_edges(h: Graph) -> list[tuple[str, str]]:
    return [(u, w) for u in h.vertices for w in sorted(h.adj[u])]


def is_polymorphism(h: Graph, f: TernaryTable) -> bool:
    """Conservative and edge-preserving on every triple of edges (loops included, both orientations)."""
    if f.domain != h.vertices or not f.is_total():
        raise GraphError("table domain does not match the graph")
    if not f.is_conservative():
        return False
    edges = _oriented_edges(h)
    for (a, a2), (b, b2), (c, c2) in product(edges, repeat=3):
        if not h.has_edge(f(a, b, c), f(a2, b2, c2)):
            return False
    return True


def is_conservative_majority(h: Graph, f: TernaryTable) -> bool:
    return is_polymorphism(h, f) and f.is_majority()


def verify_chain(h: Graph, c: PermutabilityChain) -> bool:
    try:
        if not all(is_polymorphism(h, t) for t in c.tables()):
            return False
    except GraphError:
        return False
    f1, f2, f3 = c.tables()
    for x in h.vertices:
        for y in h.vertices:
            if f1(x, y, y) != x or f3(x, x, y) != y:
                return False
            if f1(x, x, y) != f2(x, y, y) or f2(x, x, y) != f3(x, y, y):
                return False
    return True


# -- search -----------------------------------------------------------------

class _TableSearch:
    """Table entries are ints (constants, vertex indices) or ('var', id) slots."""

    def __init__(self, h: Graph):
        self.h = h
        self.n = len(h)
        self.doms: list[int] = []
        self.order: list[list[int]] = []
        self.slots: dict = {}
        self.nbrs: list[set[int]] = []
        self.loopmask = sum(1 << i for i, m in enumerate(h.masks) if (m >> i) & 1)
        self.feasible = True

    def var(self, key, values: list[int]) -> tuple[str, int]:
        if key not in self.slots:
            self.slots[key] = len(self.doms)
            self.doms.append(sum(1 << v for v in values))
            self.order.append(list(dict.fromkeys(values)))
            self.nbrs.append(set())
        return ("var", self.slots[key])

    def link(self, entries: dict[tuple[int, int, int], object]):
        """Add adjacency constraints for one table."""
        adj = self.h.masks
        edges = [(i, j) for i in range(self.n) for j in range(self.n) if (adj[i] >> j) & 1]
        for (a, a2), (b, b2), (c, c2) in product(edges, repeat=3):
            e, e2 = entries[(a, b, c)], entries[(a2, b2, c2)]
            if isinstance(e, int) and isinstance(e2, int):
                if not (adj[e] >> e2) & 1:
                    self.feasible = False
            elif isinstance(e, int):
                self.doms[e2[1]] &= adj[e]
            elif isinstance(e2, int):
                self.doms[e[1]] &= adj[e2]
            elif e == e2:
                self.doms[e[1]] &= self.loopmask
            else:
                self.nbrs[e[1]].add(e2[1])
                self.nbrs[e2[1]].add(e[1])

    def run(self, budget: Budget) -> list[int] | None:
        if not self.feasible:
            return None
        return solve_masks(self.h.masks, self.doms, [sorted(s) for s in self.nbrs], self.order, budget)

    def table(self, entries, solution: list[int]) -> TernaryTable:
        names = self.h.vertices
        values = {}
        for (x, y, z), e in entries.items():
            v = e if isinstance(e, int) else solution[e[1]]
            values[(names[x], names[y], names[z])] = names[v]
        return TernaryTable(names, values)


def _as_budget(budget: int | Budget | None) -> Budget:
    if isinstance(budget, Budget):
        return budget
    return Budget(DEFAULT_BUDGET if budget is None else budget)


def find_conservative_majority(h: Graph, budget: int | Budget | None = None) -> TernaryTable | None:
    """A conservative majority polymorphism, or None if none exists.

    Raises SearchExhausted when the step budget runs out first.
    """
    s = _TableSearch(h)
    entries = {}
    for t in product(range(s.n), repeat=3):
        x, y, z = t
        if x == y or x == z:
            entries[t] = x
        elif y == z:
            entries[t] = y
        else:
            entries[t] = s.var(t, [x, y, z])
    s.link(entries)
    found = s.run(_as_budget(budget))
    return None if found is None else s.table(entries, found)


def find_permutability_chain(h: Graph, budget: int | Budget | None = None) -> PermutabilityChain | None:
    """Three conservative polymorphisms f1, f2, f3 satisfying

        f1(x,y,y) = x,  f1(x,x,y) = f2(x,y,y),  f2(x,x,y) = f3(x,y,y),  f3(x,x,y) = y.

    The two linking values are shared variables; the entries f_i(x,y,x) are
    not touched by the identities and are searched over {x, y}.  Raises
    SearchExhausted when the budget runs out.
    """
    s = _TableSearch(h)
    tables: list[dict] = [{}, {}, {}]
    for i, entries in enumerate(tables):
        for t in product(range(s.n), repeat=3):
            x, y, z = t
            if x == y == z:
                entries[t] = x
            elif x == y:  # (x, x, z)
                if i == 2:
                    entries[t] = z
                else:
                    entries[t] = s.var(("link", i, x, z), [x, z])
            elif y == z:  # (x, y, y)
                if i == 0:
                    entries[t] = x
                else:
                    entries[t] = s.var(("link", i - 1, x, y), [x, y])
            elif x == z:  # (x, y, x)
                entries[t] = s.var(("xyx", i, x, y), [x, y])
            else:
                entries[t] = s.var(("rainbow", i, t), [x, y, z])
    for entries in tables:
        s.link(entries)
    found = s.run(_as_budget(budget))
    if found is None:
        return None
    return PermutabilityChain(*(s.table(e, found) for e in tables))


def restrict_to(h: Graph, f: TernaryTable, subset: Iterable[str]) -> tuple[Graph, TernaryTable]:
    sub = induced(h, subset)
    return sub, f.restrict(sub.vertices)
