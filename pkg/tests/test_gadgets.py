from itertools import product

import pytest

from lhomclass.gadgets import (
    Gadget,
    _seq,
    builtin_gadgets,
    classify_relation,
    evaluate_gadget,
    gadget_report,
    hardness_evidence,
)
from lhomclass.graph import GraphError, disjoint_union
from lhomclass.patterns import CATALOGUE, find_pattern, pattern
from named import SINGLE_LOOP, REFL_K3, REFL_STAR, graph

# frozen from brute-force enumeration over all list assignments of each path
EXPECTED = {
    "ReflP3": ("c", "a"),
    "IrrP5": ("e", "a"),
    "B1": ("c", "b"),
    "B2": ("b", "c"),
    "B3": ("b", "c"),
    "B4": ("e", "a"),
    "B5": ("a", "c"),
    "B6": ("a", "c"),
}


def brute_relation(h, g):
    out = set()
    for values in product(*(sorted(s) for s in g.lists)):
        if all(h.has_edge(x, y) for x, y in zip(values, values[1:])):
            out.add((values[0], values[-1]))
    return out


def test_list_sequences():
    gs = builtin_gadgets()
    assert sorted(gs) == sorted(EXPECTED)
    assert gs["ReflP3"].text() == "ac-bc-ad-ac"
    assert gs["IrrP5"].text() == "ae-bd-ce-bf-ae"
    assert gs["B1"].text() == "bc-bc-ab-ab-bc"
    assert gs["B5"].lists[1] == {"b'", "c'"}
    assert gs["B5"].lists == gs["B6"].lists


def test_seq_parses_primes():
    assert _seq("ab'-c") == (frozenset({"a", "b'"}), frozenset({"c"}))


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_gadget_forces_two_element_order(name):
    g, ev = gadget_report(name)
    t, t2 = EXPECTED[name]
    assert ev.verdict == "TwoElementOrder"
    assert ev.elements == (t, t2)
    assert ev.relation == {(t, t), (t, t2), (t2, t2)}
    assert brute_relation(CATALOGUE[name], g) == ev.relation
    assert evaluate_gadget(pattern(name), g, use_path=False) == ev


def test_corrupted_gadget_is_other():
    bad = Gadget("ReflP3", _seq("ac-bc-ac-ac"))
    ev = evaluate_gadget(pattern("ReflP3"), bad)
    assert ev.verdict == "Other"
    assert ev.relation == brute_relation(CATALOGUE["ReflP3"], bad)


def test_gadget_lists_must_fit_graph():
    with pytest.raises(GraphError):
        evaluate_gadget(SINGLE_LOOP, builtin_gadgets()["ReflP3"])
    with pytest.raises(GraphError):
        gadget_report("IrrC3")


def test_classify_relation_shapes():
    assert classify_relation({("x", "x"), ("x", "y"), ("y", "y")}).elements == ("x", "y")
    assert classify_relation({("x", "x"), ("y", "x"), ("y", "y")}).elements == ("y", "x")
    diseq = classify_relation({(a, b) for a in "uvw" for b in "uvw" if a != b})
    assert diseq.verdict == "DisequalityOnU" and diseq.elements == ("u", "v", "w")
    assert classify_relation({("x", "y"), ("y", "x")}).verdict == "Other"
    assert classify_relation(set()).verdict == "Other"


def test_pullback_into_larger_graph():
    h = disjoint_union(CATALOGUE["ReflP3"], SINGLE_LOOP)
    ev = hardness_evidence(h)
    assert ev.witness.pattern == "ReflP3"
    assert all(v.startswith("1.") for s in ev.gadget.lists for v in s)
    assert ev.relation.verdict == "TwoElementOrder"
    assert ev.relation.elements == ("1.c", "1.a")
    assert brute_relation(h, ev.gadget) == ev.relation.relation


def test_pullback_on_embedded_b1():
    # B1 sitting inside a bigger graph with an extra isolated non-loop
    h = graph("pqrz", "p-q q-r", "r")
    ev = hardness_evidence(h)
    assert ev.witness.pattern == "B1"
    assert ev.relation.verdict == "TwoElementOrder"
    assert brute_relation(h, ev.gadget) == ev.relation.relation


def test_no_evidence_inside_L():
    assert hardness_evidence(REFL_K3) is None
    assert hardness_evidence(REFL_STAR) is None


def test_patterns_without_gadget_are_deferred():
    ev = hardness_evidence(CATALOGUE["IrrC6"])
    assert ev.gadget is None and ev.relation is None
    assert ev.to_dict() == {"pattern": "IrrC6", "verdict": "deferred"}
    assert find_pattern(CATALOGUE["IrrC6"]) == ev.witness
