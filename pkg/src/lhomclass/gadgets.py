"""Path gadgets with lists that force a two-element order on their endpoints."""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, GraphError
from .patterns import Pattern, PatternWitness, find_pattern, pattern
from .solver import ListInstance, enumerate_endpoint_relation


@dataclass(frozen=True)
class Gadget:
    target: str
    lists: tuple[frozenset[str], ...]

    def instance(self) -> ListInstance:
        names = [f"s{i}" for i in range(len(self.lists))]
        cons = list(zip(names, names[1:]))
        return ListInstance.build(dict(zip(names, self.lists)), cons)

    @property
    def endpoints(self) -> tuple[str, str]:
        return "s0", f"s{len(self.lists) - 1}"

    def text(self) -> str:
        return "-".join("".join(sorted(s)) for s in self.lists)

    def renamed(self, mapping: dict[str, str], target: str | None = None) -> Gadget:
        return Gadget(target or self.target, tuple(frozenset(mapping[v] for v in s) for s in self.lists))


def _seq(text: str) -> tuple[frozenset[str], ...]:
    # "b'c'" -> {b', c'}
    out = []
    for chunk in text.split("-"):
        names, i = [], 0
        while i < len(chunk):
            if i + 1 < len(chunk) and chunk[i + 1] == "'":
                names.append(chunk[i:i + 2])
                i += 2
            else:
                names.append(chunk[i])
                i += 1
        out.append(frozenset(names))
    return tuple(out)


_TABLE = {
    "ReflP3": "ac-bc-ad-ac",
    "IrrP5": "ae-bd-ce-bf-ae",
    "B1": "bc-bc-ab-ab-bc",
    "B2": "bc-ac-ab-bc",
    "B3": "bc-ad-bd-bc",
    "B4": "ae-bd-cd-ae",
    "B5": "ac-b'c'-ab-a'c'-ac",
    "B6": "ac-b'c'-ab-a'c'-ac",
}


def builtin_gadgets() -> dict[str, Gadget]:
    return {name: Gadget(name, _seq(text)) for name, text in _TABLE.items()}


@dataclass(frozen=True)
class EvidenceRelation:
    relation: frozenset[tuple[str, str]]
    verdict: str  # "TwoElementOrder", "DisequalityOnU" or "Other"
    elements: tuple[str, ...] = ()  # (t, t') for an order, sorted U for disequality

    def to_dict(self) -> dict:
        return {
            "relation": [list(p) for p in sorted(self.relation)],
            "verdict": self.verdict,
            "elements": list(self.elements),
        }


def classify_relation(r: set[tuple[str, str]] | frozenset[tuple[str, str]]) -> EvidenceRelation:
    r = frozenset(r)
    elems = sorted({x for p in r for x in p})
    if len(r) == 3 and len(elems) == 2:
        for t, t2 in (elems, elems[::-1]):
            if r == {(t, t), (t, t2), (t2, t2)}:
                return EvidenceRelation(r, "TwoElementOrder", (t, t2))
    if len(elems) >= 3 and r == {(x, y) for x in elems for y in elems if x != y}:
        return EvidenceRelation(r, "DisequalityOnU", tuple(elems))
    return EvidenceRelation(r, "Other")


def evaluate_gadget(p: Pattern | Graph, g: Gadget, *, use_path: bool = True) -> EvidenceRelation:
    host = p.graph if isinstance(p, Pattern) else p
    for s in g.lists:
        if not s <= set(host.vertices):
            raise GraphError(f"gadget list {sorted(s)} is not a subset of the graph")
    s1, s2 = g.endpoints
    return classify_relation(enumerate_endpoint_relation(host, g.instance(), s1, s2, use_path=use_path))


@dataclass(frozen=True)
class HardnessEvidence:
    witness: PatternWitness
    gadget: Gadget | None
    relation: EvidenceRelation | None

    def to_dict(self) -> dict:
        out = {"pattern": self.witness.pattern}
        if self.gadget is not None:
            out["gadget"] = [sorted(s) for s in self.gadget.lists]
            out.update(self.relation.to_dict())
        else:
            out["verdict"] = "deferred"
        return out


def hardness_evidence(h: Graph, witness: PatternWitness | None = None) -> HardnessEvidence | None:
    """Pull the matching pattern's gadget back into ``h`` and evaluate it there."""
    witness = witness or find_pattern(h)
    if witness is None:
        return None
    base = builtin_gadgets().get(witness.pattern)
    if base is None:
        return HardnessEvidence(witness, None, None)
    pulled = base.renamed(witness.as_dict())
    return HardnessEvidence(witness, pulled, evaluate_gadget(h, pulled))


def gadget_report(name: str) -> tuple[Gadget, EvidenceRelation]:
    g = builtin_gadgets().get(name)
    if g is None:
        raise GraphError(f"no builtin gadget for {name!r}")
    return g, evaluate_gadget(pattern(name), g)

