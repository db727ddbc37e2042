import json

import pytest
from hypothesis import given, settings

from lhomclass.classify import ClassificationReport, classify, validate_report
from lhomclass.patterns import CATALOGUE, in_class_L
from lhomclass.sweep import graph_from_code
from named import C3, C5, K1, K2, REFL_C4, REFL_K3, REFL_P3, REFL_STAR, SINGLE_LOOP, TWO_LOOPS, graphs

NAMED = [
    (SINGLE_LOOP, "FO"),
    (REFL_K3, "FO"),
    (K1, "FO"),
    (K2, "L-complete"),
    (REFL_STAR, "L-complete"),
    (TWO_LOOPS, "L-complete"),
    (REFL_P3, "NL-complete"),
    (CATALOGUE["B1"], "NL-complete"),
    (C3, "NP-complete"),
    (C5, "NP-complete"),
    (REFL_C4, "NP-complete"),
    (CATALOGUE["B2"], "NP-complete"),
    (CATALOGUE["B5"], "NL-complete"),
    (CATALOGUE["B6"], "NP-complete"),
]


@pytest.mark.parametrize("h, verdict", NAMED)
def test_named_verdicts(h, verdict):
    rep = classify(h)
    assert rep.verdict == verdict
    assert validate_report(rep) == []


def test_evidence_by_verdict():
    fo = classify(REFL_K3)
    assert fo.fo_certificate is not None and fo.dismantling is not None and fo.majority is not None
    assert fo.chain_status == "skipped"
    l_ = classify(K2)
    assert l_.chain_status == "found" and l_.tree is not None and l_.witness is None
    nl = classify(REFL_P3)
    assert nl.majority_status == "found" and nl.witness.pattern == "ReflP3"
    assert nl.hardness.relation.verdict == "TwoElementOrder"
    np_ = classify(C3)
    assert np_.majority_status == "none" and np_.witness.pattern == "IrrC3"
    assert np_.hardness.gadget is None


def test_no_chain_option():
    rep = classify(K2, with_chain=False)
    assert rep.verdict == "L-complete" and rep.chain_status == "skipped"
    assert "chain" not in rep.budgets


def test_exhausted_majority_is_inconclusive():
    rep = classify(REFL_K3, budget=1)
    assert rep.verdict == "inconclusive"
    assert rep.majority_status == "exhausted"
    assert validate_report(rep) == []


def test_exhausted_chain_keeps_L_verdict():
    # majority for K2 needs no search; the chain search needs more than one step
    rep = classify(K2, budget=1)
    assert rep.chain_status == "exhausted"
    assert rep.verdict == "L-complete"
    assert any("budget" in n for n in rep.notes)


def test_validate_report_catches_tampering():
    rep = classify(REFL_P3)
    rep.verdict = "FO"
    assert validate_report(rep)
    rep = classify(K2)
    rep.verdict = "NP-complete"
    assert validate_report(rep)
    rep = classify(C3)
    bad = ClassificationReport(rep.graph, verdict="inconclusive")
    assert validate_report(bad)
    bad.verdict = "maybe"
    assert any("unknown verdict" in p for p in validate_report(bad))


def test_json_is_byte_stable_and_sorted():
    a = classify(CATALOGUE["B1"]).to_json()
    b = classify(CATALOGUE["B1"]).to_json()
    assert a == b
    d = json.loads(a)
    assert d["verdict"] == "NL-complete" and d["schema"] == 1
    assert "elapsed_ms" not in d
    assert json.dumps(d, indent=2, sort_keys=True, ensure_ascii=False) == a


def test_timings_are_opt_in():
    d = classify(SINGLE_LOOP, timings=True).to_dict()
    assert d["elapsed_ms"] >= 0


@pytest.mark.parametrize("code", range(64))
def test_three_vertex_reports_validate(code):
    h = graph_from_code(3, code)
    rep = classify(h)
    assert validate_report(rep) == []
    assert rep.verdict in {"FO", "L-complete"} if in_class_L(h) else rep.verdict in {"NL-complete", "NP-complete"}


@settings(max_examples=30, deadline=None)
@given(graphs(max_n=5, min_n=1))
def test_reports_validate(h):
    rep = classify(h)
    assert rep.verdict != "inconclusive"
    assert validate_report(rep) == []
