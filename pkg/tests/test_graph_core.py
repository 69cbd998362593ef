import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from relaydeploy.errors import DisconnectedGraphError, DomainError, SpectralError
from relaydeploy.graph_core import (
    BackboneGraph, average_distance, build_laplacian, distance_matrix, fiedler_value,
    is_connected, spectral_summary, wiener_bfs, wiener_spectral,
)

from conftest import FIG_FIEDLER, FIG_LAPLACIAN, FIG_WIENER_BFS


def random_tree(n, rng):
    return BackboneGraph.from_edges(n, [(int(rng.integers(i)), i) for i in range(1, n)])


def test_example_laplacian_exact(fig_graph):
    lap = build_laplacian(fig_graph)
    assert lap.dtype == np.int64
    np.testing.assert_array_equal(lap, FIG_LAPLACIAN)


def test_example_fiedler_matches_independent_solver(fig_graph):
    assert fiedler_value(build_laplacian(fig_graph)) == pytest.approx(FIG_FIEDLER, abs=1e-10)


def test_example_bfs_wiener(fig_graph):
    assert wiener_bfs(fig_graph) == FIG_WIENER_BFS


def test_spectral_underestimates_bfs_on_cyclic_graph(fig_graph):
    # n * sum(1/lambda) is the Kirchhoff index, a lower bound off trees
    w = wiener_spectral(spectral_summary(build_laplacian(fig_graph)))
    assert w < FIG_WIENER_BFS


def test_laplacian_rows_sum_to_zero(fig_graph):
    lap = build_laplacian(fig_graph)
    assert not lap.sum(axis=1).any()
    np.testing.assert_array_equal(lap, lap.T)


def test_single_vertex():
    g = BackboneGraph.from_edges(1, [])
    s = spectral_summary(build_laplacian(g))
    assert s.fiedler == 0.0 and s.connected
    assert wiener_spectral(s) == 0.0


def test_disconnected_graph_raises():
    g = BackboneGraph.from_edges(4, [(0, 1), (2, 3)])
    s = spectral_summary(build_laplacian(g))
    assert not s.connected
    with pytest.raises(DisconnectedGraphError):
        wiener_spectral(s)
    with pytest.raises(DisconnectedGraphError):
        wiener_bfs(g)
    assert not is_connected(g)
    assert distance_matrix(g)[0, 3] == -1


def test_path_graph_values():
    # P3: eigenvalues 0, 1, 3 -> W = 3 * (1 + 1/3) = 4
    g = BackboneGraph.from_edges(3, [(0, 1), (1, 2)])
    s = spectral_summary(build_laplacian(g))
    assert s.fiedler == pytest.approx(1.0)
    assert wiener_spectral(s) == pytest.approx(4.0)
    assert average_distance(4.0, 3, 0.1) == pytest.approx(4 / 3 + 0.1)


def test_complete_graph_fiedler():
    n = 6
    g = BackboneGraph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])
    assert fiedler_value(build_laplacian(g)) == pytest.approx(n)


def test_bad_edges_rejected():
    with pytest.raises(DomainError):
        BackboneGraph.from_edges(3, [(0, 0)])
    with pytest.raises(DomainError):
        BackboneGraph.from_edges(3, [(0, 5)])


def test_average_distance_domain():
    with pytest.raises(DomainError):
        average_distance(1.0, 1)
    with pytest.raises(DomainError):
        average_distance(-1.0, 3)


def test_spectral_error_on_nan():
    with pytest.raises(SpectralError):
        spectral_summary(np.full((3, 3), np.nan))


def test_edge_list_round_trip(fig_graph):
    text = fig_graph.to_edge_list()
    assert BackboneGraph.from_edge_list("# comment\n" + text) == fig_graph


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 40), st.integers(0, 2**32 - 1))
def test_spectral_equals_bfs_on_trees(n, seed):
    g = random_tree(n, np.random.default_rng(seed))
    w_s = wiener_spectral(spectral_summary(build_laplacian(g)))
    assert w_s == pytest.approx(wiener_bfs(g), rel=1e-9)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 25), st.floats(0.05, 0.6), st.integers(0, 2**32 - 1))
def test_bfs_wiener_matches_networkx(n, p, seed):
    G = nx.gnp_random_graph(n, p, seed=seed)
    g = BackboneGraph.from_edges(n, G.edges())
    if nx.is_connected(G):
        assert wiener_bfs(g) == nx.wiener_index(G)
        assert fiedler_value(build_laplacian(g)) > 1e-8
    else:
        assert fiedler_value(build_laplacian(g)) == pytest.approx(0.0, abs=1e-8)
    assert is_connected(g) == nx.is_connected(G)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 20), st.floats(0.1, 0.7), st.integers(0, 2**32 - 1), st.data())
def test_adding_edge_never_lowers_fiedler(n, p, seed, data):
    G = nx.gnp_random_graph(n, p, seed=seed)
    missing = [(u, v) for u in range(n) for v in range(u + 1, n) if not G.has_edge(u, v)]
    if not missing:
        return
    e = data.draw(st.sampled_from(missing))
    g = BackboneGraph.from_edges(n, G.edges())
    before = fiedler_value(build_laplacian(g))
    after = fiedler_value(build_laplacian(g.with_edges([e])))
    assert after >= before - 1e-9
