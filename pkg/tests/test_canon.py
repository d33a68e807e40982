import networkx as nx
import pytest
from hypothesis import given, strategies as st

from walklab.canon import (backtrack_isomorphic, canonical_form, forest_code, graph_certificate,
                           isomorphism, rooted_isomorphic, rooted_tree_code, tree_centers, tree_code)
from walklab.errors import BudgetExceeded
from walklab.families import fixture
from walklab.graphs import Graph, cycle, path, random_gnp, random_tree, star, vertex_deleted
from test_graphs import graphs, nxg


def perm_strategy(n):
    return st.permutations(list(range(n)))


@given(graphs(max_n=10), st.data())
def test_certificate_is_relabel_invariant(G, data):
    perm = data.draw(perm_strategy(G.n))
    H = G.relabel(perm)
    assert graph_certificate(G) == graph_certificate(H)
    phi = isomorphism(G, H)
    assert phi is not None
    assert all(H.has_edge(phi[a], phi[b]) for a, b in G.edges())


@given(graphs(max_n=8), graphs(max_n=8))
def test_isomorphism_agrees_with_networkx(G, H):
    truth = G.n == H.n and nx.is_isomorphic(nxg(G), nxg(H))
    assert (isomorphism(G, H) is not None) == truth
    assert (graph_certificate(G) == graph_certificate(H)) == truth
    assert backtrack_isomorphic(G, H) == truth


@given(graphs(max_n=8).filter(lambda g: g.n > 1), st.data())
def test_rooted_isomorphism_agrees_with_networkx(G, data):
    x = data.draw(st.integers(0, G.n - 1))
    y = data.draw(st.integers(0, G.n - 1))
    A, B = nxg(G), nxg(G)
    nx.set_node_attributes(A, {v: v == x for v in A}, "root")
    nx.set_node_attributes(B, {v: v == y for v in B}, "root")
    truth = nx.is_isomorphic(A, B, node_match=lambda a, b: a["root"] == b["root"])
    assert rooted_isomorphic(G, x, G, y) == truth


def test_regular_graphs_need_search():
    # Petersen graph vs. the 5-prism: both 3-regular on 10 vertices
    pet = nx.petersen_graph()
    prism = nx.circular_ladder_graph(5)
    G = Graph(10, pet.edges())
    H = Graph(10, prism.edges())
    assert isomorphism(G, H) is None
    assert canonical_form(G).certificate != canonical_form(H).certificate
    assert isomorphism(G, G.relabel([3, 1, 4, 0, 5, 9, 2, 6, 8, 7])) is not None


def test_tree_codes():
    assert tree_centers(path(5)) == [2]
    assert tree_centers(path(6)) == [2, 3]
    assert tree_code(star(3)) == "(()()())"
    assert rooted_tree_code(path(3), 0) == "((()))"
    assert forest_code(vertex_deleted(path(5), 2)) == ("(())", "(())")


def test_random_trees_relabelled():
    for seed in range(30):
        T = random_tree(25, seed)
        perm = list(reversed(range(25)))
        assert tree_code(T) == tree_code(T.relabel(perm))
        assert isomorphism(T, T.relabel(perm)) is not None


def test_budget_is_explicit():
    with pytest.raises(BudgetExceeded):
        canonical_form(cycle(17))
    with pytest.raises(BudgetExceeded):
        canonical_form(random_gnp(12, 0.5, 1), budget=0)


def test_hp_pair_is_not_similar():
    f = fixture("hp")
    x, y = f.marked["x"], f.marked["y"]
    assert not rooted_isomorphic(f.graph, x, f.graph, y)
    assert graph_certificate(vertex_deleted(f.graph, x)) == graph_certificate(vertex_deleted(f.graph, y))
