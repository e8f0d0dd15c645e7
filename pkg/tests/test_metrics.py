import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypercoarsen import (
    ClusterAssignment,
    Hypergraph,
    MetricError,
    conductance,
    cut_and_volume,
    evaluate_clustering,
    hypergraph_conductance,
    rating,
)
from hypercoarsen.metrics import RATING_GUARD, write_rating
from hypercoarsen.resistance import ResistanceVector
from hypercoarsen.synthetic import planted_partition, random_hypergraph

from conftest import brute_cut_vol, brute_min_conductance, random_small_hypergraph


def test_cut_examples(path3):
    assert cut_and_volume(path3, [0]) == (1.0, 1.0, 3.0)
    assert cut_and_volume(path3, [0, 1, 2])[0] == 0.0
    tri = Hypergraph.from_edges(4, [[0, 1, 2], [2, 3]], [2.0, 1.0])
    assert cut_and_volume(tri, [0])[0] == 2.0
    assert cut_and_volume(tri, [0, 3])[0] == 3.0
    mask = np.array([True, False, False, False])
    assert cut_and_volume(tri, mask) == cut_and_volume(tri, [0])


def test_conductance_examples(path3):
    assert conductance(path3, [0]) == 1.0
    assert conductance(Hypergraph.from_edges(4, [[0, 1], [2, 3]]), [0, 1]) == 0.0
    with pytest.raises(MetricError) as info:
        conductance(path3, [])
    assert info.value.kind == "trivial-set"
    with pytest.raises(MetricError):
        conductance(path3, [0, 1, 2])
    with pytest.raises(MetricError) as info:
        conductance(Hypergraph.from_edges(3, [[0, 1]]), [2])
    assert info.value.kind == "zero-volume"


def test_exhaustive_conductance_eight_vertices():
    H = Hypergraph.from_edges(
        8, [[0, 1, 2], [1, 2, 3], [3, 4], [4, 5, 6], [5, 6, 7], [0, 7], [2, 5]], [1, 2, 1, 3, 1, 1, 2]
    )
    phi, mask = hypergraph_conductance(H)
    assert phi == brute_min_conductance(H)
    assert conductance(H, mask) == phi


@pytest.mark.parametrize("seed", range(15))
def test_brute_force_agreement(seed):
    H = random_small_hypergraph(seed)
    phi, _ = hypergraph_conductance(H)
    assert phi == brute_min_conductance(H)
    rng = np.random.default_rng(seed)
    for _ in range(5):
        S = set(np.flatnonzero(rng.random(H.num_vertices) < 0.5).tolist())
        assert cut_and_volume(H, sorted(S)) == pytest.approx(brute_cut_vol(H, S), abs=0)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000))
def test_conductance_symmetric_and_bounded(seed):
    H = random_small_hypergraph(seed)
    rng = np.random.default_rng(seed)
    mask = rng.random(H.num_vertices) < 0.5
    mask[0], mask[-1] = True, False
    try:
        a = conductance(H, mask)
    except MetricError:
        return
    assert a == conductance(H, ~mask)
    assert 0.0 <= a <= 1.0


def test_evaluate_examples():
    H = random_hypergraph(10, 15, 0)
    rep = evaluate_clustering(H, ClusterAssignment.identity(10))
    assert rep.nr == 0.0
    assert all(0 <= p <= 1 for p in rep.per_cluster_phi)

    two = Hypergraph.from_edges(4, [[0, 1], [2, 3]])
    rep = evaluate_clustering(two, ClusterAssignment.from_labels([0, 0, 1, 1]))
    assert rep.phi_avg == 0.0 and rep.cut_size == 0.0
    assert rep.nr == 0.5 and rep.balance == 1.0


def test_evaluate_flags_zero_volume():
    H = Hypergraph.from_edges(3, [[0, 1]])
    rep = evaluate_clustering(H, ClusterAssignment.from_labels([0, 0, 1]))
    # {0,1} holds all the volume, so its complement side is empty too
    assert rep.zero_volume_clusters == (0, 1)
    assert rep.per_cluster_phi == (1.0, 1.0)
    with pytest.raises(MetricError):
        evaluate_clustering(H, ClusterAssignment.from_labels([0, 1]))


def test_evaluate_matches_per_cluster_conductance():
    H = random_hypergraph(40, 70, 3)
    labels = np.random.default_rng(3).integers(0, 5, 40)
    A = ClusterAssignment.from_labels(np.unique(labels, return_inverse=True)[1])
    rep = evaluate_clustering(H, A)
    for c, members in enumerate(A.members()):
        assert rep.per_cluster_phi[c] == pytest.approx(conductance(H, members), rel=1e-12)
    spanning = sum(w for pins, w in H.hyperedges if len({int(A.cluster_of[v]) for v in pins}) > 1)
    assert rep.cut_size == pytest.approx(spanning)


def test_planted_beats_random():
    wins = 0
    for seed in range(10):
        H, block = planted_partition(400, 8, seed)
        shuffled = np.random.default_rng(seed).permutation(block)
        a = evaluate_clustering(H, ClusterAssignment.from_labels(block)).phi_avg
        b = evaluate_clustering(H, ClusterAssignment.from_labels(shuffled)).phi_avg
        wins += a < b
    assert wins == 10


def test_rating_examples():
    H = Hypergraph.from_edges(4, [[0, 1], [1, 2, 3]], [2.0, 1.0])
    R = ResistanceVector.from_values([3.0, 1.0])
    assert rating(H, R, 0, 3) == 0.0
    assert rating(H, R, 0, 1) == 1.0
    assert rating(H, R, 2, 3) == pytest.approx(1.0 / RATING_GUARD)
    with pytest.raises(MetricError):
        rating(H, R, 1, 1)


def test_rating_export_flags_guarded_edges():
    H = Hypergraph.from_edges(4, [[0, 1], [1, 2, 3]], [2.0, 1.0])
    lines = write_rating(H, ResistanceVector.from_values([3.0, 1.0]), comments=["cfg"]).splitlines()
    assert lines[0] == "% cfg"
    assert "guarded_edges=1" in lines[1] and "ids=1" in lines[1]
    assert lines[3].split("\t") == ["0", "2.0", "3.0", "2.0"]
    assert lines[4].split("\t") == ["1", "1.0", "1.0", repr(RATING_GUARD)]
