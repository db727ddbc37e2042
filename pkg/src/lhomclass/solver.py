"""Exact list-homomorphism solving: arc consistency plus backtracking.

The engine works on integer bitmasks over template vertex indices.  Every
constraint of a list-homomorphism instance is the template's edge relation,
so a value ``x`` of one variable is supported across a constraint exactly
when ``adj[x]`` meets the other variable's domain.  The polymorphism
searches reuse the same engine, which is why it accepts a step budget.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

from .graph import Graph, GraphError


class SearchExhausted(Exception):
    """The step budget ran out before the search reached a definite answer."""

    def __init__(self, used: int):
        super().__init__(f"search budget exhausted after {used} steps")
        self.used = used


class Budget:
    def __init__(self, limit: int | None = None):
        self.limit = limit
        self.used = 0

    def spend(self, k: int):
        self.used += k
        if self.limit is not None and self.used > self.limit:
            raise SearchExhausted(self.used)


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class _Engine:
    def __init__(self, adj: list[int] | tuple[int, ...], nbrs: list[list[int]], budget: Budget):
        self.adj = adj
        self.nbrs = nbrs
        self.budget = budget
        self._support: dict[int, int] = {}

    def support(self, dom: int) -> int:
        s = self._support.get(dom)
        if s is None:
            s = 0
            for v in _bits(dom):
                s |= self.adj[v]
            self._support[dom] = s
        return s

    def propagate(self, doms: list[int], changed: Iterable[int]) -> bool:
        queue = deque(changed)
        queued = set(queue)
        nbrs, spend = self.nbrs, self.budget.spend
        while queue:
            w = queue.popleft()
            queued.discard(w)
            sup = self.support(doms[w])
            for u in nbrs[w]:
                du = doms[u]
                spend(du.bit_count())
                nd = du & sup
                if nd != du:
                    if not nd:
                        return False
                    doms[u] = nd
                    if u not in queued:
                        queued.add(u)
                        queue.append(u)
        return True

    def search(self, doms: list[int], order: list[list[int]]) -> list[int] | None:
        best, size = -1, 0
        for u, d in enumerate(doms):
            c = d.bit_count()
            if c > 1 and (best < 0 or c < size):
                best, size = u, c
                if c == 2:
                    break
        if best < 0:
            return [d.bit_length() - 1 for d in doms]
        for v in order[best]:
            if not (doms[best] >> v) & 1:
                continue
            trial = list(doms)
            trial[best] = 1 << v
            if self.propagate(trial, [best]):
                found = self.search(trial, order)
                if found is not None:
                    return found
        return None


def solve_masks(
    adj: list[int] | tuple[int, ...],
    doms: list[int],
    nbrs: list[list[int]],
    order: list[list[int]] | None = None,
    budget: Budget | None = None,
) -> list[int] | None:
    """Index-level solver.  ``nbrs`` must be symmetric and free of self-pairs."""
    budget = budget or Budget()
    engine = _Engine(adj, nbrs, budget)
    doms = list(doms)
    if any(d == 0 for d in doms):
        return None
    if not engine.propagate(doms, range(len(doms))):
        return None
    if order is None:
        n = max((d.bit_length() for d in doms), default=0)
        order = [list(range(n))] * len(doms)
    return engine.search(doms, order)


# -- named instances --------------------------------------------------------

@dataclass(frozen=True)
class ListInstance:
    variables: tuple[str, ...]
    constraints: frozenset[tuple[str, str]]
    lists: Mapping[str, frozenset[str]] = field(hash=False)

    def __post_init__(self):
        declared = set(self.variables)
        if len(declared) != len(self.variables):
            raise GraphError("duplicate instance variable")
        for x, y in self.constraints:
            if x not in declared or y not in declared:
                raise GraphError(f"constraint {x}-{y} uses an undeclared variable")
        if set(self.lists) != declared:
            raise GraphError("every variable needs exactly one list")

    @classmethod
    def build(cls, lists: Mapping[str, Iterable[str]], constraints: Iterable[tuple[str, str]] = ()):
        """Variables in the order of ``lists``; constraints are unordered."""
        cons = frozenset((x, y) if x <= y else (y, x) for x, y in constraints)
        return cls(tuple(lists), cons, {v: frozenset(s) for v, s in lists.items()})

    def with_lists(self, **changes: Iterable[str]) -> ListInstance:
        new = dict(self.lists)
        new.update({k: frozenset(v) for k, v in changes.items()})
        return ListInstance(self.variables, self.constraints, new)


def _compile(h: Graph, inst: ListInstance):
    idx = h.index
    for v, lst in inst.lists.items():
        if not lst <= set(h.vertices):
            raise GraphError(f"list of {v} is not a subset of the template")
    vidx = {v: i for i, v in enumerate(inst.variables)}
    loopmask = sum(1 << i for i, m in enumerate(h.masks) if (m >> i) & 1)
    doms = [sum(1 << idx[a] for a in inst.lists[v]) for v in inst.variables]
    nbrs: list[set[int]] = [set() for _ in inst.variables]
    for x, y in inst.constraints:
        i, j = vidx[x], vidx[y]
        if i == j:
            doms[i] &= loopmask
        else:
            nbrs[i].add(j)
            nbrs[j].add(i)
    return doms, [sorted(s) for s in nbrs]


def arc_consistency(h: Graph, inst: ListInstance) -> ListInstance | None:
    """Largest arc-consistent sub-instance, or None if some list empties."""
    doms, nbrs = _compile(h, inst)
    if any(d == 0 for d in doms):
        return None
    if not _Engine(h.masks, nbrs, Budget()).propagate(doms, range(len(doms))):
        return None
    lists = {v: frozenset(h.vertices[b] for b in _bits(d)) for v, d in zip(inst.variables, doms)}
    return ListInstance(inst.variables, inst.constraints, lists)


def solve(h: Graph, inst: ListInstance, budget: Budget | None = None) -> dict[str, str] | None:
    doms, nbrs = _compile(h, inst)
    found = solve_masks(h.masks, doms, nbrs, [list(range(len(h)))] * len(doms), budget)
    if found is None:
        return None
    return {v: h.vertices[i] for v, i in zip(inst.variables, found)}


def is_solution(h: Graph, inst: ListInstance, assignment: Mapping[str, str]) -> bool:
    if set(assignment) != set(inst.variables):
        return False
    if any(assignment[v] not in inst.lists[v] for v in inst.variables):
        return False
    return all(h.has_edge(assignment[x], assignment[y]) for x, y in inst.constraints)


def path_order(inst: ListInstance, s1: str, s2: str) -> list[str] | None:
    """Variables along a simple path from s1 to s2 covering the instance, if it is one."""
    nbrs: dict[str, set[str]] = {v: set() for v in inst.variables}
    for x, y in inst.constraints:
        if x != y:
            nbrs[x].add(y)
            nbrs[y].add(x)
    if s1 == s2:
        return [s1] if inst.variables == (s1,) else None
    seq = [s1]
    prev = None
    while seq[-1] != s2:
        nxt = nbrs[seq[-1]] - {prev}
        if len(nxt) != 1 or (len(seq) > 1 and len(nbrs[seq[-1]]) != 2):
            return None
        prev = seq[-1]
        seq.append(nxt.pop())
        if len(seq) > len(inst.variables):
            return None
    if len(nbrs[s1]) != 1 or len(nbrs[s2]) != 1 or len(seq) != len(inst.variables):
        return None
    return seq


def path_relation(h: Graph, inst: ListInstance, seq: list[str]) -> set[tuple[str, str]]:
    """Endpoint relation of a path-shaped instance by reachability over bitmasks."""
    doms, _ = _compile(h, inst)
    pos = {v: i for i, v in enumerate(inst.variables)}
    layers = [doms[pos[v]] for v in seq]
    adj = h.masks
    out = set()
    for a in _bits(layers[0]):
        cur = 1 << a
        for layer in layers[1:]:
            nxt = 0
            for v in _bits(cur):
                nxt |= adj[v]
            cur = nxt & layer
            if not cur:
                break
        for b in _bits(cur):
            out.add((h.vertices[a], h.vertices[b]))
    return out


def enumerate_endpoint_relation(
    h: Graph, inst: ListInstance, s1: str, s2: str, *, use_path: bool = True
) -> set[tuple[str, str]]:
    """All pairs (f(s1), f(s2)) over solutions f of the instance."""
    for s in (s1, s2):
        if s not in inst.lists:
            raise GraphError(f"unknown variable {s!r}")
    seq = path_order(inst, s1, s2) if use_path else None
    if seq is not None:
        return path_relation(h, inst, seq)
    out = set()
    for a in sorted(inst.lists[s1]):
        for b in sorted(inst.lists[s2]):
            if s1 == s2 and a != b:
                continue
            restricted = inst.with_lists(**{s1: [a], s2: [b]}) if s1 != s2 else inst.with_lists(**{s1: [a]})
            if solve(h, restricted) is not None:
                out.add((a, b))
    return out


# -- text format ------------------------------------------------------------

def parse_instance(text: str) -> ListInstance:
    from .graph import ParseError

    lists: dict[str, list[str]] = {}
    cons = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "var" and len(parts) >= 3 and parts[2] == ":":
            if parts[1] in lists:
                raise ParseError(lineno, f"duplicate variable {parts[1]!r}")
            lists[parts[1]] = parts[3:]
        elif parts[0] == "con" and len(parts) == 3:
            for name in parts[1:]:
                if name not in lists:
                    raise ParseError(lineno, f"undeclared variable {name!r}")
            cons.append((parts[1], parts[2]))
        else:
            raise ParseError(lineno, f"cannot parse {raw.strip()!r}")
    return ListInstance.build(lists, cons)


def serialize_instance(inst: ListInstance) -> str:
    lines = [f"var {v} : {' '.join(sorted(inst.lists[v]))}".rstrip() for v in inst.variables]
    lines += [f"con {x} {y}" for x, y in sorted(inst.constraints)]
    return "\n".join(lines) + "\n"
