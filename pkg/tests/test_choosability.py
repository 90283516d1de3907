from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from listcrit.choosability import (
    ListAssignment,
    canonical_assignments,
    is_choosable,
    is_colorable_with_lists,
    is_paintable,
    _polynomial_certificate,
    list_coloring,
)
from listcrit.errors import CapacityError
from listcrit.graph import Graph, chromatic_number, complete_graph, cycle_graph, empty_graph, path_graph
from oracles import first_use_assignments, naive_choosable, naive_paintable


@st.composite
def small_graphs(draw, max_n=4):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for v in range(n) for u in range(v)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


def brute_list_colorable(g: Graph, lists) -> bool:
    return any(all(c[u] != c[v] for u, v in g.edges()) for c in itertools.product(*lists))


# -- list coloring --------------------------------------------------------------

def test_list_coloring_examples():
    k4 = complete_graph(4)
    assert not is_colorable_with_lists(k4, ListAssignment.from_lists([[0, 1, 2]] * 4))
    c5 = cycle_graph(5)
    la = ListAssignment.from_lists([[i] for i in range(5)])
    assert is_colorable_with_lists(c5, la)
    lists = [[0, 1], [0, 1], [0, 1], [0, 1], [0, 2]]
    la = ListAssignment.from_lists(lists)
    expected = brute_list_colorable(c5, lists)
    assert is_colorable_with_lists(c5, la) == expected
    if expected:
        col = list_coloring(c5, la)
        assert all(col[v] in lists[v] for v in range(5))
        assert all(col[u] != col[v] for u, v in c5.edges())


def test_list_outside_universe_is_rejected():
    with pytest.raises(ValueError):
        ListAssignment((frozenset({0, 5}),), 3)


@settings(max_examples=200)
@given(small_graphs(max_n=5), st.data())
def test_list_coloring_against_brute_force(g, data):
    lists = [data.draw(st.sets(st.integers(0, 3), min_size=1, max_size=3)) for _ in range(g.n)]
    la = ListAssignment.from_lists([sorted(s) for s in lists])
    ok = is_colorable_with_lists(g, la)
    assert ok == brute_list_colorable(g, [sorted(s) for s in lists])
    col = list_coloring(g, la)
    assert (col is not None) == ok
    if ok:
        assert all(col[v] in lists[v] for v in range(g.n))
        assert all(col[u] != col[v] for u, v in g.edges())


# -- canonical assignments --------------------------------------------------------

def test_canonical_assignment_examples():
    assert [a.to_json() for a in canonical_assignments(empty_graph(1), 1)] == [[[0]]]
    k2 = [a.to_json() for a in canonical_assignments(path_graph(2), 1)]
    assert sorted(k2) == [[[0], [0]], [[0], [1]]]


@pytest.mark.parametrize("sizes", [(2,) * 5, (3,) * 4, (1, 2, 3), (2, 1, 2, 1)])
def test_canonical_count_matches_independent_enumerator(sizes):
    g = cycle_graph(len(sizes)) if len(sizes) >= 3 else path_graph(len(sizes))
    got = list(canonical_assignments(g, list(sizes)))
    assert len(got) == len(first_use_assignments(sizes))
    assert len({a.lists for a in got}) == len(got)
    for a in got:
        assert a.sizes() == sizes
        assert a.universe <= sum(sizes)


# -- choosability -------------------------------------------------------------

def _assert_witness(g, f, verdict):
    if verdict.choosable:
        assert verdict.witness is None
        return
    w = verdict.witness
    assert w is not None
    sizes = (f,) * g.n if isinstance(f, int) else tuple(f)
    assert w.sizes() == sizes
    assert not is_colorable_with_lists(g, w)


def test_choosability_examples():
    v = is_choosable(complete_graph(4), 3)
    assert not v.choosable and all(lst == v.witness.lists[0] for lst in v.witness.lists)
    assert is_choosable(cycle_graph(4), 2).choosable
    v = is_choosable(cycle_graph(5), 2)
    assert not v.choosable
    _assert_witness(cycle_graph(5), 2, v)


def test_capacity():
    with pytest.raises(CapacityError):
        is_choosable(empty_graph(11), 3)
    with pytest.raises(CapacityError):
        is_paintable(empty_graph(10), 3)


@pytest.mark.parametrize("f", [2, 3])
def test_oracle_equivalence_upto5(upto5, f):
    for g in upto5:
        verdict = is_choosable(g, f)
        assert verdict.choosable == naive_choosable(g.n, g.edges(), (f,) * g.n), g
        _assert_witness(g, f, verdict)


@settings(max_examples=120, deadline=None)
@given(small_graphs(max_n=4), st.data())
def test_oracle_equivalence_mixed_sizes(g, data):
    f = data.draw(st.lists(st.integers(0, 3), min_size=g.n, max_size=g.n))
    verdict = is_choosable(g, f)
    assert verdict.choosable == naive_choosable(g.n, g.edges(), f)
    if 0 not in f:
        _assert_witness(g, f, verdict)


def test_subgraph_monotonicity_upto5(upto5):
    for g in upto5:
        for f in (2, 3):
            if not is_choosable(g, f).choosable:
                continue
            for u, v in g.edges():
                assert is_choosable(g.delete_edge(u, v), f).choosable
            for v in range(g.n):
                assert is_choosable(g.delete_vertex(v), f).choosable


def test_identical_lists_reduction(upto6):
    for g in upto6:
        chi = chromatic_number(g)
        for c in range(1, 4):
            if chi > c:
                v = is_choosable(g, c)
                assert not v.choosable
                _assert_witness(g, c, v)


@pytest.mark.parametrize("n", range(3, 9))
def test_cycles(n):
    even = n % 2 == 0
    assert is_choosable(cycle_graph(n), 2).choosable == even
    assert is_paintable(cycle_graph(n), 2) == even


# -- paintability ----------------------------------------------------------------

def test_paintability_examples():
    assert not is_paintable(complete_graph(4), 3)
    assert is_paintable(cycle_graph(4), 2)
    assert not is_paintable(cycle_graph(5), 2)


def test_paintability_against_game_oracle_upto5(upto5):
    for g in upto5:
        assert is_paintable(g, 2) == naive_paintable(g.n, g.edges(), (2,) * g.n), g


@settings(max_examples=60, deadline=None)
@given(small_graphs(max_n=4), st.data())
def test_paintability_against_game_oracle_mixed(g, data):
    f = data.draw(st.lists(st.integers(0, 3), min_size=g.n, max_size=g.n))
    assert is_paintable(g, f) == naive_paintable(g.n, g.edges(), f)


def test_paintable_implies_choosable_upto6(upto6):
    for g in upto6:
        if is_paintable(g, 2):
            assert is_choosable(g, 2).choosable


def test_polynomial_certificate_is_sound(upto5):
    fired = 0
    for g in upto5:
        for f in (2, 3):
            if _polynomial_certificate(g, (f,) * g.n):
                fired += 1
                assert naive_choosable(g.n, g.edges(), (f,) * g.n), g
    assert fired > 0
    # even cycles pass, odd cycles never can (their coefficient vanishes)
    assert _polynomial_certificate(cycle_graph(6), (2,) * 6)
    assert not _polynomial_certificate(cycle_graph(5), (2,) * 5)
