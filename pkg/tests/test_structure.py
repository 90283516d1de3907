from __future__ import annotations

import itertools

import networkx as nx
import pytest

from listcrit.errors import CapacityError, PreconditionError
from listcrit.graph import (
    Graph,
    bowtie_graph,
    complete_graph,
    cycle_graph,
    disjoint_union,
    path_graph,
    star_graph,
    wheel_graph,
)
from listcrit.structure import (
    InequalityCheck,
    beta,
    check_gallai_structure,
    check_gallai_tree_bound,
    check_kernel_magic,
    check_mic_composition,
    enumerate_gallai_trees,
    is_gallai_tree,
    mic,
    restricted_M,
)
from oracles import brute_mic, independent, to_nx


def nx_is_gallai(h: nx.Graph) -> bool:
    if not nx.is_connected(h):
        return False
    for block in nx.biconnected_components(h):
        b = h.subgraph(block)
        n, m = b.number_of_nodes(), b.number_of_edges()
        complete = m == n * (n - 1) // 2
        odd_cycle = n % 2 == 1 and all(d == 2 for _, d in b.degree())
        if not (complete or odd_cycle):
            return False
    return True


def test_inequality_check():
    c = InequalityCheck("x", 3, "<=", 3)
    assert c.holds and c.tight
    assert not InequalityCheck("x", 4, "<=", 3).holds
    assert InequalityCheck("x", 4, ">=", 3).holds
    with pytest.raises(ValueError):
        InequalityCheck("x", 1, "<", 2)
    d = InequalityCheck("x", 1, "==", 1).to_dict()
    assert d == {"name": "x", "lhs": "1", "relation": "==", "rhs": "1", "holds": True, "tight": True}


def test_gallai_examples():
    assert is_gallai_tree(cycle_graph(5)).is_gallai
    cert = is_gallai_tree(cycle_graph(4))
    assert not cert.is_gallai and cert.offending_block == frozenset(range(4))
    assert is_gallai_tree(bowtie_graph()).is_gallai
    assert is_gallai_tree(Graph(1, (0,))).is_gallai
    assert is_gallai_tree(path_graph(2)).is_gallai
    with pytest.raises(ValueError):
        is_gallai_tree(disjoint_union(path_graph(2), path_graph(2)))


def test_gallai_recognition_against_networkx(upto7):
    for g in upto7:
        if g.is_connected():
            assert is_gallai_tree(g).is_gallai == nx_is_gallai(to_nx(g.n, g.edges())), g


def test_enumeration_examples():
    got = sorted((t.n, t.edge_count) for t in enumerate_gallai_trees(3, 2))
    assert got == [(1, 0), (2, 1), (3, 2), (3, 3)]
    assert [(t.n, t.edge_count) for t in enumerate_gallai_trees(1, 5)] == [(1, 0)]
    with pytest.raises(CapacityError):
        list(enumerate_gallai_trees(13, 3))


@pytest.mark.parametrize("max_degree", [2, 3, 4, 5, 6])
def test_enumeration_complete_upto7(upto7, max_degree):
    expected = 0
    for g in upto7:
        if g.is_connected() and g.max_degree() <= max_degree:
            expected += nx_is_gallai(to_nx(g.n, g.edges()))
    trees = list(enumerate_gallai_trees(7, max_degree))
    assert len(trees) == expected
    for t in trees:
        assert t.max_degree() <= max_degree and is_gallai_tree(t).is_gallai


def test_beta_examples():
    assert beta(cycle_graph(5), 4) == 0
    assert beta(star_graph(3), 4) == 1
    assert beta(bowtie_graph(), 5) == 1


def test_gallai_tree_bound_examples():
    c = check_gallai_tree_bound(cycle_graph(5), 4)
    assert (c.lhs, c.rhs, c.holds, c.tight) == (10, 10, True, True)
    c = check_gallai_tree_bound(complete_graph(3), 4)
    assert (c.lhs, c.rhs, c.holds, c.tight) == (6, 6, True, True)
    c = check_gallai_tree_bound(star_graph(3), 4)
    assert (c.lhs, c.rhs, c.holds, c.tight) == (6, 10, True, False)


@pytest.mark.parametrize(
    "g, k",
    [
        (cycle_graph(5), 3),  # k too small
        (cycle_graph(4), 4),  # not a Gallai tree
        (star_graph(4), 4),  # degree above k-1
        (complete_graph(4), 4),  # K_k itself
    ],
)
def test_gallai_tree_bound_preconditions(g, k):
    with pytest.raises(PreconditionError):
        check_gallai_tree_bound(g, k)


def test_mic_examples():
    w = mic(Graph(1, (0,)))
    assert w.value == 0 and w.independent_set == frozenset({0})
    assert mic(complete_graph(4)).value == 3
    assert mic(cycle_graph(5)).value == 4
    assert restricted_M(cycle_graph(5), set()).value == 0
    assert restricted_M(cycle_graph(5), set()).independent_set == frozenset()
    assert restricted_M(complete_graph(4), range(4)).value == 3
    assert restricted_M(wheel_graph(5), {5}).value == 5


def test_mic_against_brute_force_upto6(upto6):
    for g in upto6:
        e = g.edges()
        w = mic(g)
        assert w.value == brute_mic(g.n, e)
        assert independent(e, w.independent_set)
        assert w.value == sum(1 for u, v in e if (u in w.independent_set) != (v in w.independent_set))
        assert w.value >= g.max_degree()
        for r in range(g.n + 1):
            for h in itertools.combinations(range(g.n), r):
                m = restricted_M(g, h)
                assert m.value <= w.value
                assert m.independent_set <= set(h)
        # spot-check restricted values against brute force on one subset
        half = set(range(0, g.n, 2))
        assert restricted_M(g, half).value == brute_mic(g.n, e, half)


def test_kernel_magic_examples():
    for g, k in [(complete_graph(4), 4), (cycle_graph(5), 3), (cycle_graph(7), 3)]:
        c = check_kernel_magic(g, k)
        assert c.holds and c.tight
    c = check_kernel_magic(complete_graph(4), 4)
    assert (c.lhs, c.rhs) == (12, 12)
    assert mic(cycle_graph(7)).value == 6


def test_gallai_structure_examples():
    assert check_gallai_structure(complete_graph(4), 4) == (True, None)
    assert check_gallai_structure(cycle_graph(5), 3) == (True, None)
    assert check_gallai_structure(wheel_graph(5), 4) == (True, None)
    # C4 on the degree-2 vertices is not a Gallai tree
    ok, comp = check_gallai_structure(cycle_graph(4), 3)
    assert not ok and comp == frozenset(range(4))


def test_mic_composition_on_wheel():
    comp = check_mic_composition(wheel_graph(5), 4)
    # the hub covers 5 edges, two rim vertices would add 3 each, but the
    # hub is adjacent to the whole rim, so the witnesses do not combine
    assert comp.m_witness.value == 5 and len(comp.low_witness) == 2
    assert not comp.union_independent
    assert (comp.check.lhs, comp.check.rhs, comp.check.holds) == (6, 11, False)
    g = wheel_graph(5)
    assert independent(g.edges(), comp.combined_set)
    assert comp.combined_value == sum(
        1 for u, v in g.edges() if (u in comp.combined_set) != (v in comp.combined_set)
    )
    assert comp.combined_value <= mic(g).value
