import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypercoarsen import EmbeddingPool, Hypergraph, build_embedding_pool, estimate_resistances
from hypercoarsen import nonlinear_quadratic_form, resistance_ratio
from hypercoarsen.errors import EmbeddingError
from hypercoarsen.resistance import ResistanceVector, write_resistances
from hypercoarsen.synthetic import random_graph, random_hypergraph

from conftest import dense_laplacian, exact_resistances, random_small_hypergraph


def pool_of(vectors, n):
    V = np.asarray(vectors, dtype=float).reshape(-1, n)
    return EmbeddingPool(V, 1, 0, tuple("x" for _ in V), ())


def test_quadratic_form_examples():
    assert nonlinear_quadratic_form(Hypergraph.from_edges(2, [[0, 1]], [2.0]), np.array([1.0, 0.0])) == 2.0
    assert nonlinear_quadratic_form(Hypergraph.from_edges(3, [[0, 1, 2]]), np.array([0.0, 5.0, 1.0])) == 25.0
    H = random_hypergraph(10, 15, 0)
    assert nonlinear_quadratic_form(H, np.full(10, 3.7)) == 0.0
    with pytest.raises(ValueError):
        nonlinear_quadratic_form(H, np.ones(9))


def test_quadratic_form_matches_laplacian_on_graphs():
    H = random_graph(20, 15, 3)
    chi = np.random.default_rng(0).normal(size=20)
    assert nonlinear_quadratic_form(H, chi) == pytest.approx(chi @ dense_laplacian(H) @ chi, rel=1e-12)


def test_ratio_examples(path3):
    chi = np.array([1.0, 0.0, -1.0])
    qh = nonlinear_quadratic_form(path3, chi)
    assert resistance_ratio(path3, 0, chi, qh) == 0.5
    const = np.ones(3)
    assert resistance_ratio(path3, 1, const, nonlinear_quadratic_form(path3, const)) == 0.0


def test_ratio_triangle_dense_oracle():
    H = Hypergraph.from_edges(3, [[0, 1], [1, 2], [0, 2]], [1.0, 2.0, 3.0])
    L = dense_laplacian(H)
    _, vecs = np.linalg.eigh(L)
    chi = vecs[:, 1]
    qh = nonlinear_quadratic_form(H, chi)
    for e, ((u, v), _) in enumerate(H.hyperedges):
        expected = (chi[u] - chi[v]) ** 2 / (chi @ L @ chi)
        assert abs(resistance_ratio(H, e, chi, qh) - expected) <= 1e-12


def test_singleton_pool_equals_ratio():
    H = random_hypergraph(12, 20, 5)
    chi = np.random.default_rng(2).normal(size=12)
    R = estimate_resistances(H, pool_of(chi, 12))
    qh = nonlinear_quadratic_form(H, chi)
    np.testing.assert_array_equal(R.r, [resistance_ratio(H, e, chi, qh) for e in range(H.num_edges)])
    assert R.qh.tolist() == [qh]


def test_empty_pool_is_an_error():
    H = random_hypergraph(5, 4, 0)
    with pytest.raises(EmbeddingError) as info:
        estimate_resistances(H, pool_of(np.empty(0), 5))
    assert info.value.kind == "empty-pool"


@pytest.mark.parametrize("seed", range(10))
def test_lower_bound_on_graphs(seed):
    rng = np.random.default_rng(seed)
    H = random_graph(int(rng.integers(8, 50)), int(rng.integers(0, 40)), seed)
    R = estimate_resistances(H, build_embedding_pool(H, 3, seed))
    assert np.all(R.r <= exact_resistances(H) + 1e-9)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.floats(-1e3, 1e3).filter(lambda c: abs(c) > 1e-3))
def test_ratio_scale_invariant(seed, c):
    H = random_small_hypergraph(seed)
    chi = np.random.default_rng(seed).normal(size=H.num_vertices)
    a = estimate_resistances(H, pool_of(chi, H.num_vertices)).r
    b = estimate_resistances(H, pool_of(c * chi, H.num_vertices)).r
    np.testing.assert_allclose(a, b, rtol=1e-9, atol=1e-15)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.sampled_from([0.0, 0.25, 0.5, 1.0, 2.0]), min_size=1, max_size=30))
def test_order_consistent_with_values(r):
    R = ResistanceVector.from_values(r)
    ordered = R.r[R.order]
    assert np.all(np.diff(ordered) >= 0)
    for i in range(len(r) - 1):
        if ordered[i] == ordered[i + 1]:
            assert R.order[i] < R.order[i + 1]


def test_write_resistances():
    text = write_resistances(ResistanceVector.from_values([0.5, 0.125]), comments=["run"])
    assert text.splitlines() == ["% run", "% edge_id\tR_e", "0\t0.5", "1\t0.125"]
