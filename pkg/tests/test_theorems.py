import numpy as np
import pytest

from walklab.algebra import min_recurrence
from walklab.errors import PreconditionError, TheoremViolation
from walklab.families import fixture
from walklab.graphs import RootedGraph, coalescence, complete, graftage, path, random_tree
from walklab.theorems import (BoundReport, TrialReport, ball, extended_by_recurrence,
                              first_difference, lemma52_witness, part3_parameters,
                              random_tree_ambivalence_trial, random_triple_trial, rate_curve,
                              rate_curve_csv, strong_nonsimilar_pairs, threshold_property,
                              triple_collision, verify_krebs_verbitsky, verify_part3_bound,
                              verify_pn_yn)
from walklab.walks import walk_counts


def test_bound_report_adjacency_invariant():
    with pytest.raises(TheoremViolation):
        BoundReport("x", 5, 3, 5, 3, 4)
    r = BoundReport("x", 5, 5, 6, 5, 6, {"a": True})
    assert r.ok and '"ok": true' in r.to_json()
    assert not BoundReport("x", 5, 4, 5, 5, 6).ok


def test_first_difference():
    assert first_difference([1, 2, 3], [1, 2, 4]) == 2
    assert first_difference([1, 2], [1, 2]) is None


def test_ball():
    B, idx = ball(path(7), 0, 2)
    assert B.n == 3 and idx[0] == 0


@pytest.mark.parametrize("n, agree, diff", [(5, 5, 6), (10, 15, 16), (23, 41, 42)])
def test_pn_yn(n, agree, diff):
    r = verify_pn_yn(n)
    assert (r.agree_through, r.first_difference) == (agree, diff)
    assert all(r.checks.values())


def test_pn_yn_precondition():
    with pytest.raises(PreconditionError):
        verify_pn_yn(4)


def test_kv_smallest():
    r = verify_krebs_verbitsky(3, 2)
    assert r.first_difference == 27 and r.n == 24 and all(r.checks.values())


def test_part3_parameters():
    assert part3_parameters(39) == (6, 2)
    assert part3_parameters(57) == (9, 3)   # 3*9 + 27 + 3 = 57, no padding needed
    assert part3_parameters(100) == (12, 4)
    with pytest.raises(PreconditionError):
        part3_parameters(20)


def test_part3_without_padding():
    r = verify_part3_bound(57)
    assert r.ok and r.checks["padding"] and r.n == 57


def test_extended_by_recurrence():
    seq = walk_counts(fixture("dist_T8").graph, 2, 30).counts
    ext = extended_by_recurrence(seq[:16], 8, 30)
    assert [int(x) for x in ext] == list(seq)


def test_threshold_property_on_fixture_pairs():
    pairs = []
    for a, b in (("hp", "hp"), ("p7", "y5"), ("dist_T8", "dist_S11"), ("amb12_T", "amb12_S")):
        fa, fb = fixture(a), fixture(b)
        pairs.append((fa.graph, fa.marked["x"], fb.graph, fb.marked["y"]))
    tally = threshold_property(pairs)
    assert tally.cases == 8 and tally.premise_held >= 5 and not tally.violations


@pytest.mark.parametrize("n, m", [(1, 1), (2, 1), (2, 3), (3, 3), (4, 4)])
def test_lemma52_witness(n, m):
    Y, Z, sy, sz = lemma52_witness(n, m, seed=5)
    N = n + m
    assert Y[:N - 1] == Z[:N - 1] and Y[N - 1] != Z[N - 1]
    assert min_recurrence(Y[:2 * n + 2], n + 1).order == n
    assert min_recurrence(Z[:2 * m + 2], m + 1).order == m


def test_triple_collision_self_test():
    assert triple_collision(np.array(complete(6).adjacency_matrix()))
    from walklab.graphs import random_gnp
    from walklab.walks import closed_triples
    for seed in range(40):
        G = random_gnp(12, 0.5, seed)
        assert triple_collision(G.adjacency_array()) == (len(set(closed_triples(G))) < G.n)


def test_trials_reproducible_and_worker_independent():
    a = random_triple_trial(12, 40, seed=3)
    b = random_triple_trial(12, 40, seed=3)
    c = random_triple_trial(12, 40, seed=3, workers=2)
    assert a == b == c
    assert 0 <= a.rate <= 1
    t1 = random_tree_ambivalence_trial(14, 30, seed=4)
    t2 = random_tree_ambivalence_trial(14, 30, seed=4, workers=2)
    assert t1 == t2


def test_trial_precondition():
    with pytest.raises(PreconditionError):
        random_triple_trial(5, 0, 1)


def test_rate_curve_csv():
    reps = rate_curve([8, 10], 20, seed=1)
    text = rate_curve_csv(reps)
    assert text.splitlines()[0] == "n,trials,collisions,rate"
    assert len(text.splitlines()) == 3
    assert TrialReport(5, 4, 1, 1).rate == 0.25


def test_strong_nonsimilar_detector():
    hp = fixture("hp")
    pairs = strong_nonsimilar_pairs(hp.graph)
    x, y = sorted((hp.marked["x"], hp.marked["y"]))
    assert (x, y) in [tuple(sorted(p)) for p in pairs]
    assert strong_nonsimilar_pairs(path(9)) == []


def test_detector_finds_planted_graftage_limb():
    """Two HP copies grafted at x and y, hung on a random tree."""
    hp = fixture("hp")
    limb = graftage(RootedGraph(hp.graph, hp.marked["x"]), RootedGraph(hp.graph, hp.marked["y"]))
    M = random_tree(15, 8)
    T = coalescence(RootedGraph(M, 0), limb).graph
    assert strong_nonsimilar_pairs(T)


def test_small_trees_have_no_pairs():
    assert random_tree_ambivalence_trial(5, 200, seed=1).collisions == 0
