"""Four-way classification of the list homomorphism problem for a graph.

The pipeline asks, in order: is there a conservative majority (otherwise
NP-complete); is a forbidden pattern present (then NL-complete); are the
first-order conditions met (FO); otherwise L-complete.  Every piece of
evidence is kept in the report and can be re-checked by ``validate_report``
without trusting the searches that produced it.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

from .decomp import DecompositionTree, decompose, validate_tree
from .fo import (
    DismantlingSequence,
    FOCertificate,
    dismantle_square,
    fo_certificate,
    validate_dismantling,
    validate_fo_certificate,
)
from .gadgets import HardnessEvidence, classify_relation, evaluate_gadget, hardness_evidence
from .graph import Graph, serialize_graph
from .patterns import PatternWitness, find_pattern, validate_witness
from .polymorphisms import (
    DEFAULT_BUDGET,
    PermutabilityChain,
    TernaryTable,
    find_conservative_majority,
    find_permutability_chain,
    is_conservative_majority,
    verify_chain,
)
from .solver import Budget, SearchExhausted

SCHEMA = 1
VERDICTS = ("FO", "L-complete", "NL-complete", "NP-complete", "inconclusive")

TYPESETS = {
    "NP-complete": "admits type 1",
    "NL-complete": "omits type 1, admits type 4",
    "L-complete": "typeset {3}",
    "FO": "typeset {3}",
}


@dataclass
class ClassificationReport:
    graph: Graph
    verdict: str = "inconclusive"
    majority_status: str = "skipped"  # found / none / exhausted / skipped
    majority: TernaryTable | None = None
    chain_status: str = "skipped"
    chain: PermutabilityChain | None = None
    witness: PatternWitness | None = None
    hardness: HardnessEvidence | None = None
    tree: DecompositionTree | None = None
    dismantling: DismantlingSequence | None = None
    fo_certificate: FOCertificate | None = None
    budgets: dict[str, int] = field(default_factory=dict)
    steps: dict[str, int] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    elapsed_ms: float | None = None

    def to_dict(self) -> dict:
        ev: dict = {
            "majority": {"status": self.majority_status},
            "chain": {"status": self.chain_status},
            "pattern": None,
            "gadget": None,
            "decomposition": None,
            "dismantling": None,
            "fo_structure": None,
        }
        if self.majority is not None:
            ev["majority"]["table"] = self.majority.to_rows()
        if self.chain is not None:
            ev["chain"].update({f"f{i}": t.to_rows() for i, t in enumerate(self.chain.tables(), 1)})
        if self.witness is not None:
            ev["pattern"] = {"name": self.witness.pattern, "map": [list(p) for p in self.witness.mapping]}
        if self.hardness is not None:
            ev["gadget"] = self.hardness.to_dict()
        if self.tree is not None:
            ev["decomposition"] = self.tree.to_dict()
        if self.dismantling is not None:
            ev["dismantling"] = self.dismantling.to_list()
        if self.fo_certificate is not None:
            ev["fo_structure"] = self.fo_certificate.to_dict()
        out = {
            "schema": SCHEMA,
            "graph": serialize_graph(self.graph),
            "verdict": self.verdict,
            "typeset": TYPESETS.get(self.verdict),
            "evidence": ev,
            "budgets": dict(self.budgets),
            "steps": dict(self.steps),
            "notes": list(self.notes),
        }
        if self.elapsed_ms is not None:
            out["elapsed_ms"] = self.elapsed_ms
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False)


def _run(search, h: Graph, limit: int):
    budget = Budget(limit)
    try:
        found = search(h, budget)
    except SearchExhausted:
        return "exhausted", None, budget.used
    return ("none" if found is None else "found"), found, budget.used


def classify(h: Graph, budget: int = DEFAULT_BUDGET, *, with_chain: bool = True, timings: bool = False) -> ClassificationReport:
    start = time.perf_counter()
    rep = ClassificationReport(h)
    rep.budgets = {"majority": budget}
    rep.majority_status, rep.majority, rep.steps["majority"] = _run(find_conservative_majority, h, budget)
    rep.witness = find_pattern(h)
    try:
        _decide(rep, h, budget, with_chain)
    finally:
        if timings:
            rep.elapsed_ms = round((time.perf_counter() - start) * 1000, 3)
    return rep


def _decide(rep: ClassificationReport, h: Graph, budget: int, with_chain: bool):
    if rep.majority_status == "exhausted":
        rep.notes.append("majority search hit its budget")
        return
    if rep.majority_status == "none":
        if rep.witness is None:
            rep.notes.append("divergence: no majority but no forbidden pattern")
            return
        rep.hardness = hardness_evidence(h, rep.witness)
        rep.verdict = "NP-complete"
        return
    if rep.witness is not None:
        rep.hardness = hardness_evidence(h, rep.witness)
        rep.verdict = "NL-complete"
        return
    rep.tree = decompose(h)
    if rep.tree is None:
        rep.notes.append("divergence: pattern-free graph without a decomposition")
        return
    rep.fo_certificate = fo_certificate(h)
    rep.dismantling = dismantle_square(h)
    if (rep.fo_certificate is None) != (rep.dismantling is None):
        rep.notes.append("divergence: structural FO test and dismantling disagree")
        return
    if rep.fo_certificate is not None:
        rep.verdict = "FO"
        return
    if with_chain:
        rep.budgets["chain"] = budget
        rep.chain_status, rep.chain, rep.steps["chain"] = _run(find_permutability_chain, h, budget)
        if rep.chain_status == "none":
            rep.notes.append("divergence: graph in L without a permutability chain")
            return
        if rep.chain_status == "exhausted":
            rep.notes.append("chain search hit its budget; verdict rests on the decomposition")
    rep.verdict = "L-complete"


def validate_report(rep: ClassificationReport) -> list[str]:
    """Independently re-check the evidence and the verdict invariants; returns problems found."""
    h = rep.graph
    problems = []
    if rep.verdict not in VERDICTS:
        problems.append(f"unknown verdict {rep.verdict!r}")
    if rep.majority is not None and not is_conservative_majority(h, rep.majority):
        problems.append("majority table fails verification")
    if rep.chain is not None and not verify_chain(h, rep.chain):
        problems.append("permutability chain fails verification")
    if rep.witness is not None and not validate_witness(h, rep.witness):
        problems.append("pattern witness is not an induced embedding")
    if rep.hardness is not None and rep.hardness.gadget is not None:
        recomputed = evaluate_gadget(h, rep.hardness.gadget, use_path=False)
        if recomputed != rep.hardness.relation or classify_relation(recomputed.relation) != rep.hardness.relation:
            problems.append("gadget relation does not match recomputation")
    if rep.tree is not None and not validate_tree(h, rep.tree):
        problems.append("decomposition tree does not replay to the graph")
    if rep.dismantling is not None and not validate_dismantling(h, rep.dismantling):
        problems.append("dismantling sequence fails re-validation")
    if rep.fo_certificate is not None and not validate_fo_certificate(h, rep.fo_certificate):
        problems.append("FO certificate fails re-validation")

    v = rep.verdict
    if v == "NP-complete" and rep.majority_status != "none":
        problems.append("NP verdict without a definitive majority refutation")
    if v == "NL-complete" and (rep.majority is None or rep.witness is None):
        problems.append("NL verdict needs a majority table and a pattern witness")
    if v == "L-complete" and (rep.tree is None or rep.fo_certificate is not None or rep.dismantling is not None):
        problems.append("L verdict needs a decomposition and a failed FO test")
    if v == "FO" and (rep.fo_certificate is None or rep.dismantling is None):
        problems.append("FO verdict needs the structural certificate and a dismantling")
    if v == "inconclusive" and "exhausted" not in (rep.majority_status, rep.chain_status) and not rep.notes:
        problems.append("inconclusive verdict without an exhausted search or a flagged divergence")
    return problems
