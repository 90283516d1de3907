from __future__ import annotations

from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from listcrit.errors import CapacityError
from listcrit.graph import (
    Graph,
    block_decomposition,
    bowtie_graph,
    chromatic_number,
    complete_graph,
    components,
    cycle_graph,
    degree_profile,
    disjoint_union,
    empty_graph,
    independence_number,
    k_coloring,
    maximum_independent_set,
    maximum_weight_independent_set,
    path_graph,
    petersen_graph,
    star_graph,
    wheel_graph,
)
from oracles import brute_alpha, brute_chi, edge_blocks


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for v in range(n) for u in range(v)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return Graph.from_edges(n, chosen)


def test_constructor_invariants():
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    assert g.edge_count == 3
    with pytest.raises(ValueError):
        Graph(2, (0b10, 0b00))  # asymmetric
    with pytest.raises(ValueError):
        Graph(1, (0b1,))  # self-loop
    with pytest.raises(CapacityError):
        empty_graph(65)


def test_named_graphs():
    assert complete_graph(4).edge_count == 6
    assert cycle_graph(5).degrees() == [2] * 5
    assert path_graph(4).edge_count == 3
    assert star_graph(3).max_degree() == 3
    w = wheel_graph(5)
    assert (w.n, w.edge_count, w.degree(5)) == (6, 10, 5)
    p = petersen_graph()
    assert (p.n, p.edge_count, set(p.degrees())) == (10, 15, {3})
    b = bowtie_graph()
    assert (b.n, b.edge_count, b.degree(0)) == (5, 6, 4)


def test_degree_profile_examples():
    p = degree_profile(complete_graph(4), 4)
    assert p.degrees == (3, 3, 3, 3) and p.low_set == frozenset(range(4)) and p.average_degree == 3
    p = degree_profile(cycle_graph(5), 3)
    assert p.low_set == frozenset(range(5)) and p.average_degree == 2
    p = degree_profile(wheel_graph(5), 4)
    assert p.high_set == frozenset({5}) and p.low_set == frozenset(range(5))
    assert p.average_degree == Fraction(10, 3) and isinstance(p.average_degree, Fraction)


@given(graphs(), st.integers(1, 6))
def test_degree_profile_properties(g, k):
    p = degree_profile(g, k)
    assert p.low_set | p.high_set == frozenset(range(g.n))
    assert not (p.low_set & p.high_set)
    if g.n:
        assert p.average_degree * g.n == 2 * g.edge_count


def test_components_examples():
    (only,) = components(complete_graph(4))
    assert only[0].edge_count == 6
    parts = components(disjoint_union(cycle_graph(3), cycle_graph(5)))
    assert sorted(c.n for c, _ in parts) == [3, 5]
    assert components(empty_graph(0)) == []


@given(graphs())
def test_components_partition(g):
    parts = components(g)
    seen = [v for _, m in parts for v in m]
    assert sorted(seen) == list(range(g.n))
    assert sum(c.edge_count for c, _ in parts) == g.edge_count
    assert all(c.is_connected() for c, _ in parts)


def test_block_examples():
    b = block_decomposition(bowtie_graph())
    assert sorted(map(len, b.blocks)) == [3, 3] and b.cutvertices == frozenset({0})
    assert len(block_decomposition(cycle_graph(6)).blocks) == 1
    p = block_decomposition(path_graph(4))
    assert len(p.blocks) == 3 and p.cutvertices == frozenset({1, 2})
    assert sorted(p.endblocks()) == sorted(i for i, bl in enumerate(p.blocks) if bl & {0, 3})
    with pytest.raises(ValueError):
        block_decomposition(empty_graph(2))


def _check_blocks(g):
    b = block_decomposition(g)
    assert sorted(map(sorted, b.blocks)) == sorted(map(sorted, edge_blocks(g.n, g.edges())))
    assert frozenset().union(*b.blocks) == frozenset(range(g.n))
    for u, v in g.edges():
        assert sum(1 for bl in b.blocks if u in bl and v in bl) == 1
    for i, j in [(i, j) for i in range(len(b.blocks)) for j in range(i)]:
        shared = b.blocks[i] & b.blocks[j]
        assert len(shared) <= 1 and shared <= b.cutvertices
    # block-cutvertex incidence is a tree
    nodes = len(b.blocks) + len(b.cutvertices)
    links = sum(len(bl & b.cutvertices) for bl in b.blocks)
    assert links == nodes - 1


def test_blocks_against_oracle_all_connected_upto7(upto7):
    for g in upto7:
        if g.is_connected():
            _check_blocks(g)


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=8))
def test_blocks_against_oracle_order8(g):
    if g.n and g.is_connected():
        _check_blocks(g)


def test_chi_alpha_examples():
    assert chromatic_number(complete_graph(4)) == 4
    assert chromatic_number(cycle_graph(5)) == 3
    assert chromatic_number(petersen_graph()) == 3
    assert independence_number(complete_graph(4)) == 1
    assert independence_number(cycle_graph(5)) == 2
    assert independence_number(petersen_graph()) == 4
    assert chromatic_number(empty_graph(0)) == 0


def test_chi_alpha_against_brute_force_upto7(upto7):
    for g in upto7:
        e = g.edges()
        chi = chromatic_number(g)
        alpha = independence_number(g)
        assert chi == brute_chi(g.n, e), g
        assert alpha == brute_alpha(g.n, e), g
        # alpha(C) >= |C| / chi(C)
        assert alpha * chi >= g.n
        col = k_coloring(g, chi)
        assert col is not None and all(col[u] != col[v] for u, v in e)
        assert chi == 0 or k_coloring(g, chi - 1) is None


def test_capacity_errors():
    with pytest.raises(CapacityError):
        chromatic_number(empty_graph(21))
    with pytest.raises(CapacityError):
        independence_number(empty_graph(41))


@given(graphs(), st.data())
def test_weighted_independent_set(g, data):
    w = data.draw(st.lists(st.integers(0, 9), min_size=g.n, max_size=g.n))
    value, mask = maximum_weight_independent_set(g, w)
    chosen = [v for v in range(g.n) if mask >> v & 1]
    assert all(not g.has_edge(u, v) for u in chosen for v in chosen if u < v)
    assert value == sum(w[v] for v in chosen)
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    best = max(
        (sum(w[v] for v in c) for c in nx.find_cliques(nx.complement(h))),
        default=0,
    )
    assert value == best
    size = bin(maximum_independent_set(g)).count("1")
    assert size == independence_number(g)
