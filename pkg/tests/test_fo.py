from itertools import product

import pytest
from hypothesis import given, settings

from lhomclass.fo import (
    DismantlingSequence,
    FOCertificate,
    dismantle_square,
    dominates,
    dominates_bruteforce,
    fo_certificate,
    fo_structural,
    greedy_dismantle,
    validate_dismantling,
    validate_fo_certificate,
)
from lhomclass.graph import GraphError
from lhomclass.sweep import domination_matches, graph_from_code
from named import CROSSED, K1, K2, REFL_K2, REFL_K3, REFL_STAR, SINGLE_LOOP, TWO_LOOPS, graph, graphs


def all_pairs(h):
    return set(product(h.vertices, repeat=2))


def test_reflexive_edge_pair_dominated_by_diagonal():
    live = all_pairs(REFL_K2)
    assert dominates(REFL_K2, live, ("a", "b"), ("a", "a"))
    assert dominates_bruteforce(REFL_K2, live, ("a", "b"), ("a", "a"))


def test_irreflexive_edge_has_no_domination():
    live = all_pairs(K2)
    for p in live:
        for q in live:
            assert not dominates(K2, live, p, q)
    assert dismantle_square(K2) is None


def test_domination_needs_live_pairs():
    with pytest.raises(GraphError):
        dominates(K2, {("a", "a")}, ("a", "b"), ("a", "a"))


def test_dominating_pair_must_share_the_list():
    h = graph("abc", "a-b b-c a-c", "abc")
    live = all_pairs(h)
    assert not dominates(h, live, ("a", "b"), ("c", "c"))
    assert not dominates_bruteforce(h, live, ("a", "b"), ("c", "c"))


def test_reflexive_triangle_dismantles_fully():
    seq = dismantle_square(REFL_K3)
    assert seq is not None and len(seq.steps) == 6
    assert validate_dismantling(REFL_K3, seq)
    assert validate_dismantling(REFL_K3, seq, brute=True)
    assert seq.lines()[0].count("(") == 2


def test_two_loops_get_stuck():
    assert dismantle_square(TWO_LOOPS) is None
    _, live = greedy_dismantle(TWO_LOOPS)
    assert {("x", "y"), ("y", "x")} <= live


def test_crossed_graph_is_stuck_at_the_nonloop_pair():
    assert not fo_structural(CROSSED)
    assert dismantle_square(CROSSED) is None
    _, live = greedy_dismantle(CROSSED)
    assert ("x", "y") in live


def test_trivial_graphs_dismantle():
    assert dismantle_square(K1) == DismantlingSequence(())
    assert dismantle_square(SINGLE_LOOP) == DismantlingSequence(())


def test_structural_examples():
    assert fo_structural(SINGLE_LOOP) and fo_structural(REFL_K3) and fo_structural(K1)
    assert not fo_structural(K2) and not fo_structural(REFL_STAR) and not fo_structural(TWO_LOOPS)
    # loop a, non-loops b, c with N(b) inside N(c)
    h = graph("abcd", "a-b a-c a-d d-c", "ad")
    cert = fo_certificate(h)
    assert cert == FOCertificate(("a", "d"), ("b", "c"))
    assert validate_fo_certificate(h, cert)
    assert not validate_fo_certificate(h, FOCertificate(("a", "d"), ("c", "b")))
    # incomparable non-loop neighbourhoods
    assert not fo_structural(graph("abcd", "a-c b-d a-b", "ab"))


def test_validate_dismantling_rejects_bad_sequences():
    seq = dismantle_square(REFL_K3)
    assert not validate_dismantling(REFL_K3, DismantlingSequence(seq.steps[:-1]))
    assert not validate_dismantling(REFL_K3, DismantlingSequence(seq.steps[::-1][:1] + seq.steps[1:]))
    # (c,c) lies outside the list {a,b}, so it cannot dominate (a,b)
    bogus = DismantlingSequence(((("a", "b"), ("c", "c")),) + seq.steps[1:])
    assert not validate_dismantling(REFL_K3, bogus)
    assert not validate_dismantling(REFL_K3, bogus, brute=True)


@pytest.mark.parametrize("code", range(64))
def test_shortcut_matches_bruteforce_three_vertices(code):
    assert domination_matches(graph_from_code(3, code))


@pytest.mark.parametrize("code", range(1024))
def test_fo_tests_agree_four_vertices(code):
    h = graph_from_code(4, code)
    fwd, rev = dismantle_square(h), dismantle_square(h, reverse=True)
    assert fo_structural(h) == (fwd is not None) == (rev is not None)


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=5))
def test_found_sequences_validate(h):
    seq = dismantle_square(h)
    assert (seq is not None) == fo_structural(h)
    if seq is not None:
        assert validate_dismantling(h, seq)
        assert validate_fo_certificate(h, fo_certificate(h))
