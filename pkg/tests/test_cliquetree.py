from itertools import combinations

import pytest
from hypothesis import given

from chordal_msc.chordal import NotAPeoError, PerfectEliminationOrder, recognize_chordal
from chordal_msc.cliquetree import build_clique_tree, maximal_cliques
from chordal_msc.graph import WeightedGraph
from strategies import chordal_graphs
from test_chordal import brute_clique_number


def _tree_ok(rep):
    nodes = rep.num_nodes
    edges = rep.tree_edges()
    assert len(edges) == nodes - 1
    seen, stack = {0}, [0]
    while stack:
        a = stack.pop()
        for b in rep.tree_adj[a]:
            if b not in seen:
                seen.add(b)
                stack.append(b)
    assert len(seen) == nodes


def _subtree_connected(rep, nodes):
    nodes = set(nodes)
    if not nodes:
        return False
    start = next(iter(nodes))
    seen, stack = {start}, [start]
    while stack:
        a = stack.pop()
        for b in rep.tree_adj[a]:
            if b in nodes and b not in seen:
                seen.add(b)
                stack.append(b)
    return seen == nodes


def check_representation(g, rep):
    _tree_ok(rep)
    assert rep.max_degree() <= 3
    for v in range(g.n):
        assert _subtree_connected(rep, rep.subtrees[v])
        assert all(v in rep.bags[t] for t in rep.subtrees[v])
    for u, v in combinations(range(g.n), 2):
        assert bool(set(rep.subtrees[u]) & set(rep.subtrees[v])) == g.has_edge(u, v)


def test_k3_single_clique():
    g = WeightedGraph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    peo = recognize_chordal(g)
    assert maximal_cliques(g, peo) == [frozenset({0, 1, 2})]
    rep = build_clique_tree(g, peo)
    check_representation(g, rep)
    assert set(rep.subtrees[0]) & set(rep.subtrees[1]) & set(rep.subtrees[2])


def test_p3_two_cliques():
    g = WeightedGraph.from_edges(3, [(0, 1), (1, 2)])
    peo = recognize_chordal(g)
    assert sorted(maximal_cliques(g, peo), key=sorted) == [frozenset({0, 1}), frozenset({1, 2})]
    rep = build_clique_tree(g, peo)
    check_representation(g, rep)
    assert len(rep.subtrees[1]) == 2


def test_star_degree_reduction():
    g = WeightedGraph.from_edges(7, [(0, v) for v in range(1, 7)])
    rep = build_clique_tree(g, recognize_chordal(g))
    check_representation(g, rep)


def test_disconnected_and_empty():
    g = WeightedGraph.from_edges(5, [(0, 1), (3, 4)])
    check_representation(g, build_clique_tree(g, recognize_chordal(g)))
    e = WeightedGraph.from_edges(0, [])
    assert build_clique_tree(e, recognize_chordal(e)).num_nodes == 1


def test_rejects_bad_order():
    c4 = WeightedGraph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    with pytest.raises(NotAPeoError):
        build_clique_tree(c4, PerfectEliminationOrder._unchecked(c4, [0, 1, 2, 3]))


@given(chordal_graphs(max_n=12))
def test_intersection_property(g):
    rep = build_clique_tree(g, recognize_chordal(g))
    check_representation(g, rep)
    assert rep.max_bag() == brute_clique_number(g)
