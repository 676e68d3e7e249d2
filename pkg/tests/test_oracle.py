import numpy as np
import pytest

from datlas.oracle import (OracleError, dense_chain, dense_power,
                           floyd_warshall_distances, naive_community_features,
                           simulate_walkers, spectral_norm, total_variation,
                           truncated_dense)
from conftest import (complete_graph, cycle_graph, path_graph,
                      random_connected_graph)


def test_dense_chain_reconstruction():
    g = random_connected_graph(80, 0.07, seed=40, ensure_nonbipartite=False)
    ch = dense_chain(g)
    assert np.abs(ch.T.sum(axis=1) - 1).max() < 1e-12
    assert abs(ch.eigenvalues[0] - 1) < 1e-10


def test_dense_chain_cap():
    g = random_connected_graph(80, 0.07, seed=40)
    with pytest.raises(OracleError):
        dense_chain(g, cap=50)


def test_dense_power_examples():
    g = complete_graph(3)
    ch = dense_chain(g)
    assert np.array_equal(dense_power(ch, 0), np.eye(3))
    assert np.abs(dense_power(ch, 1) - ch.T).max() == 0
    assert np.allclose(dense_power(ch, 2)[0], [0.5, 0.25, 0.25])
    with pytest.raises(OracleError):
        dense_power(ch, -1)


def test_truncated_dense_full_rank_exact():
    g = random_connected_graph(40, 0.15, seed=41)
    ch = dense_chain(g)
    assert np.abs(truncated_dense(ch, g.n, 3) - dense_power(ch, 3)).max() < 1e-10


def test_spectral_norm_identity():
    assert abs(spectral_norm(np.eye(7)) - 1.0) < 1e-12
    assert abs(spectral_norm(np.diag([3.0, -5.0, 1.0])) - 5.0) < 1e-12


def test_simulate_walkers_examples():
    p3 = path_graph(3)
    assert simulate_walkers(p3, 0, 0, 100, seed=0).tolist() == [1.0, 0, 0]
    assert simulate_walkers(p3, 0, 1, 100, seed=0).tolist() == [0, 1.0, 0]
    k4 = complete_graph(4)
    emp = simulate_walkers(k4, 0, 3, 100_000, seed=1)
    ch = dense_chain(k4)
    assert total_variation(emp, dense_power(ch, 3)[0]) <= 0.02
    with pytest.raises(OracleError):
        simulate_walkers(p3, 0, 1, 0)


def test_naive_features_regular_equality():
    g = cycle_graph(9)
    ch = dense_chain(g)
    labels = np.zeros(9, dtype=int)
    labels[4:] = 1
    out = naive_community_features(ch, labels, 3)
    assert np.abs(out["p_in"] - out["p_out"]).max() < 1e-14


def test_naive_features_k4_cheeger():
    ch = dense_chain(complete_graph(4))
    out = naive_community_features(ch, [0, 0, 1, 1], 1)
    assert np.allclose(out["cheeger"], 2 / 3)


def test_naive_features_long_time_limits():
    g = random_connected_graph(40, 0.15, seed=42)
    ch = dense_chain(g)
    labels = (np.arange(g.n) % 2).astype(int)
    out = naive_community_features(ch, labels, 500)
    d = ch.degrees.astype(float)
    for c in (0, 1):
        in_c = labels == c
        n_c = in_c.sum()
        expected_in = d[in_c].sum() / n_c / d.sum()
        expected_out = d[~in_c].sum() / (g.n - n_c) / d.sum()
        assert abs(out["p_in"][c] - expected_in) < 1e-8
        assert abs(out["p_out"][c] - expected_out) < 1e-8


def test_floyd_warshall_path():
    p3 = path_graph(3)
    dist = floyd_warshall_distances(p3)
    assert dist.tolist() == [[0, 1, 2], [1, 0, 1], [2, 1, 0]]


def test_total_variation():
    assert total_variation([1, 0], [0, 1]) == 1.0
    assert total_variation([0.5, 0.5], [0.5, 0.5]) == 0.0
