import numpy as np
import pytest
from hypothesis import given, strategies as st

from walklab.algebra import Poly, adjacency_char_poly, min_recurrence, poly_divides, power_sums
from walklab.errors import BudgetExceeded, PreconditionError
from walklab.families import fixture, fixture_names
from walklab.graphs import complete, path, random_connected_graph, random_gnp
from walklab.walks import (HASH_PRIMES, brute_force_closed, brute_force_profiles, brute_force_walks, closed_triple,
                           closed_triples, closed_walk_counts, first_return_counts, main_polynomial,
                           never_return_counts, profile_residues, reaches_counts,
                           reaches_from_decomposition, total_closed_walks, walk_counts, walk_matrix)
from test_graphs import graphs

connected = graphs(max_n=8).filter(lambda g: g.is_connected())


def test_dist_tree_sequence():
    f = fixture("dist_T8")
    W = walk_counts(f.graph, f.marked["x"], 11)
    assert W.counts == (1, 2, 5, 8, 20, 32, 80, 128, 320, 512, 1280, 2048)
    spec = min_recurrence(list(W.counts[:8]), 4)
    assert spec.order == 3 and spec.charpoly == Poly([0, -4, 0, 1])


def test_main_polynomials_of_dist_pair():
    assert main_polynomial(fixture("dist_T8").graph).format() == "z^4 - z^3 - 4z^2 + 4z"
    assert main_polynomial(fixture("dist_S11").graph).format() == "z^5 - 6z^3 + 8z"


def test_profile_basics():
    W = walk_counts(complete(4), 0, 3)
    assert W.counts == (1, 3, 9, 27) and len(W) == 4 and W[2] == 9
    assert closed_walk_counts(path(2), 0, 4).counts == (1, 0, 1, 0, 1)
    with pytest.raises(PreconditionError):
        walk_counts(path(3), 3, 2)


@given(connected, st.data())
def test_matrix_counts_match_brute_force(G, data):
    v = data.draw(st.integers(0, G.n - 1))
    K = 6
    W, R = brute_force_profiles(G, v, K)
    assert tuple(W) == walk_counts(G, v, K).counts
    assert tuple(R) == closed_walk_counts(G, v, K).counts
    assert brute_force_walks(G, v, 3) == W[3] and brute_force_closed(G, v, 4) == R[4]


def test_brute_force_budget():
    with pytest.raises(BudgetExceeded):
        brute_force_walks(complete(6), 0, 12)


@given(graphs(max_n=9))
def test_trace_identity(G):
    """Total closed walks of length k are the power sums of the spectrum."""
    P = adjacency_char_poly(G.adjacency_matrix())
    assert total_closed_walks(G, 8)[1:] == power_sums(P, 8)


@given(graphs(max_n=10), st.data())
def test_closed_triple_matches_profile(G, data):
    v = data.draw(st.integers(0, G.n - 1))
    R = closed_walk_counts(G, v, 4).counts
    assert closed_triple(G, v) == R[2:]
    assert closed_triples(G)[v] == R[2:]


@given(connected, st.data())
def test_recurrence_charpoly_divides_char_poly(G, data):
    v = data.draw(st.integers(0, G.n - 1))
    P = adjacency_char_poly(G.adjacency_matrix())
    for prof in (walk_counts(G, v, 2 * G.n - 1), closed_walk_counts(G, v, 2 * G.n - 1)):
        spec = min_recurrence(list(prof.counts), G.n)
        assert poly_divides(spec.charpoly, P)


@given(connected)
def test_main_polynomial_annihilates_walk_vector(G):
    M = main_polynomial(G)
    cols = walk_matrix(G).columns
    A = np.array(G.adjacency_matrix(), dtype=object)
    vec = np.array(cols[0], dtype=object)
    acc = np.zeros(G.n, dtype=object)
    for c in M.int_coeffs():
        acc = acc + c * vec
        vec = A.dot(vec)
    assert not acc.any()
    assert poly_divides(M, adjacency_char_poly(G.adjacency_matrix()))


@given(connected, st.data())
def test_decompositions(G, data):
    v = data.draw(st.integers(0, G.n - 1))
    K = 8
    R = closed_walk_counts(G, v, K)
    rbar = first_return_counts(R)
    # rebuild r from first returns
    r = [1, 0] + [sum(rbar[s] * R.counts[k - s] for s in range(2, k + 1)) for k in range(2, K + 1)]
    assert tuple(r) == R.counts
    wbar = never_return_counts(G, v, K)
    assert reaches_from_decomposition(wbar, R.counts) == reaches_counts(G, v, K)


def test_profile_residues_exact():
    for seed in range(5):
        G = random_gnp(30, 0.5, seed)
        for p in HASH_PRIMES:
            W, R = profile_residues(G, 20, p)
            for v in (0, 7, 29):
                assert [int(x) for x in W[v]] == [c % p for c in walk_counts(G, v, 20).counts]
                assert [int(x) for x in R[v]] == [c % p for c in closed_walk_counts(G, v, 20).counts]


@pytest.mark.parametrize("name", fixture_names(include_auxiliary=True))
def test_fixtures_against_brute_force(name):
    G = fixture(name).graph
    for v in range(0, G.n, max(1, G.n // 6)):
        W = walk_counts(G, v, 8).counts
        R = closed_walk_counts(G, v, 8).counts
        assert brute_force_profiles(G, v, 8) == (list(W), list(R))
        assert R[2] == G.degree(v) == W[1]


def test_walk_matrix_rank_full_for_random_connected():
    from walklab.algebra import rank_exact
    G = random_connected_graph(7, 1)
    assert rank_exact(walk_matrix(G).as_matrix()) == main_polynomial(G).degree
