from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lhomclass.graph import GraphError, induced
from lhomclass.patterns import (
    CATALOGUE,
    PATTERN_NAMES,
    find_pattern,
    in_class_L,
    is_basic_irreflexive,
    is_induced_embedding,
    validate_witness,
)
from named import C6, K1, REFL_K3, REFL_P3, REFL_STAR, graph, graphs, reflexive


def brute_find(h, name):
    """Every injective map, checked by the embedding predicate alone."""
    p = CATALOGUE[name]
    for image in permutations(h.vertices, len(p)):
        m = dict(zip(p.vertices, image))
        if is_induced_embedding(p, h, m):
            return m
    return None


def edges_of(g):
    return sorted(e for e in g.edges if e[0] != e[1]), sorted(g.loops())


def test_catalogue_order_and_size():
    assert PATTERN_NAMES == (
        "ReflP3", "ReflC4", "IrrC3", "IrrC5", "IrrC6", "IrrP5", "B1", "B2", "B3", "B4", "B5", "B6",
    )


@pytest.mark.parametrize(
    "name, edges, loops",
    [
        ("ReflP3", "a-b b-c c-d", "abcd"),
        ("ReflC4", "a-b b-c c-d a-d", "abcd"),
        ("IrrC3", "a-b b-c a-c", ""),
        ("IrrC5", "a-b b-c c-d d-e a-e", ""),
        ("IrrC6", "a-b b-c c-d d-e e-f a-f", ""),
        ("IrrP5", "a-b b-c c-d d-e e-f", ""),
        ("B1", "a-b b-c", "c"),
        ("B2", "a-b b-c", "ac"),
        ("B3", "a-b b-c c-d", "bcd"),
        ("B4", "a-b b-c c-d d-e a-c", "cd"),
    ],
)
def test_catalogue_edge_lists(name, edges, loops):
    g = CATALOGUE[name]
    assert edges_of(g) == (sorted(tuple(e.split("-")) for e in edges.split()), sorted(loops))


def test_b5_b6_edge_lists():
    b5 = CATALOGUE["B5"]
    assert set(b5.vertices) == {"a", "b", "c", "a'", "b'", "c'"}
    assert b5.loops() == {"a", "b", "c"}
    want = {("a", "b"), ("b", "c"), ("a", "c"), ("a", "a'"), ("a", "b'"), ("b", "b'"), ("b", "c'"), ("c", "c'")}
    assert set(edges_of(b5)[0]) == want
    b6 = CATALOGUE["B6"]
    assert set(edges_of(b6)[0]) == want | {("a'", "c")}
    assert b6.loops() == {"a", "b", "c"}


@pytest.mark.parametrize("name", PATTERN_NAMES)
def test_every_pattern_is_its_own_witness(name):
    w = find_pattern(CATALOGUE[name])
    assert w is not None and w.pattern == name
    assert validate_witness(CATALOGUE[name], w)


def test_b3_identity_witness():
    w = find_pattern(CATALOGUE["B3"])
    assert w.pattern == "B3"
    assert w.as_dict() == {v: v for v in "abcd"}


def test_irr_c6_identity_witness():
    w = find_pattern(CATALOGUE["IrrC6"])
    assert (w.pattern, w.as_dict()) == ("IrrC6", {v: v for v in "abcdef"})
    assert find_pattern(C6).pattern == "IrrC6"


def test_reflexive_star_has_no_pattern():
    assert find_pattern(REFL_STAR) is None
    assert all(brute_find(REFL_STAR, n) is None for n in PATTERN_NAMES)


def test_reflexive_path_witness():
    assert find_pattern(REFL_P3).pattern == "ReflP3"


def test_in_class_L_examples():
    assert in_class_L(graph("a", "", "a"))
    assert not in_class_L(graph("abcdef", "a-b b-c c-d d-e e-f"))
    assert in_class_L(REFL_K3)
    assert all(brute_find(REFL_K3, n) is None for n in PATTERN_NAMES)


def test_loop_status_must_match():
    # a looped triangle is not an induced irreflexive triangle
    assert find_pattern(reflexive("abc", "a-b b-c a-c")) is None
    one_loop = graph("abc", "a-b b-c a-c", "a")
    assert find_pattern(one_loop) is None
    assert all(brute_find(one_loop, n) is None for n in PATTERN_NAMES)
    # a loop where B1 needs a loopless middle
    assert find_pattern(graph("abc", "a-b b-c", "bc")) is None


def test_is_basic_irreflexive_examples():
    assert is_basic_irreflexive(K1)
    assert not is_basic_irreflexive(C6)
    p4 = graph("abcde", "a-b b-c c-d d-e")
    assert is_basic_irreflexive(p4)
    with pytest.raises(GraphError):
        is_basic_irreflexive(graph("a", "", "a"))


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=6))
def test_find_pattern_matches_brute_force(h):
    w = find_pattern(h)
    first = next((n for n in PATTERN_NAMES if brute_find(h, n) is not None), None)
    assert (w.pattern if w else None) == first
    if w is not None:
        assert validate_witness(h, w)
        assert w.as_dict() == brute_find(h, w.pattern)  # lexicographic first


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=6), st.data())
def test_monotone_and_hereditary(h, data):
    w = find_pattern(h)
    if w is not None:
        bigger = data.draw(st.sets(st.sampled_from(h.vertices))) | w.image()
        assert find_pattern(induced(h, bigger)) is not None
    else:
        s = data.draw(st.sets(st.sampled_from(h.vertices))) if len(h) else set()
        assert in_class_L(induced(h, s))
