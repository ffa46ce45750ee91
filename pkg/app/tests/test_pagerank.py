import networkx as nx
import numpy as np
import pytest

from app.schemas.run_config import RunConfig
from app.services.graph import ingest_edge_list
from app.services.pagerank import pagerank

from .helpers import (
    by_label,
    dense_links,
    dense_smooth,
    dense_stochastic,
    leading_left_vector,
    permuted,
    random_network,
)


def test_two_cycle_is_uniform(two_cycle):
    result = pagerank(two_cycle)

    np.testing.assert_allclose(result.scores, [0.5, 0.5], atol=1e-12)
    assert result.algorithm == "pagerank"
    assert result.vertices == ("a", "b")


def test_sink_pulls_rank(star):
    result = pagerank(star)

    assert result.ordering().order()[0] == star.index_of("c")


def test_self_loops_are_ignored():
    plain = ingest_edge_list([("a", "b"), ("b", "a"), ("b", "c")], mode="www")
    looped = ingest_edge_list([("a", "b"), ("b", "a"), ("b", "c"), ("c", "c")], mode="www")

    np.testing.assert_allclose(pagerank(plain).scores, pagerank(looped).scores)


@pytest.mark.parametrize("seed", range(100))
def test_matches_dense_oracle(seed, oracle_cfg):
    net = random_network(seed, weighted=seed % 2 == 0)
    result = pagerank(net, oracle_cfg)

    operator = dense_smooth(dense_stochastic(dense_links(net)), oracle_cfg.alpha)
    assert np.abs(result.scores - leading_left_vector(operator)).sum() < 1e-8


@pytest.mark.parametrize("seed", range(5))
def test_agrees_with_networkx(seed):
    net = random_network(seed, n=12, p=0.3)
    graph = nx.DiGraph()
    graph.add_nodes_from(range(net.vertex_count))
    coo = net.adjacency.tocoo()
    graph.add_weighted_edges_from(zip(coo.row.tolist(), coo.col.tolist(), coo.data.tolist()))

    expected = nx.pagerank(graph, alpha=0.85, tol=1e-13, max_iter=10000)
    result = pagerank(net, RunConfig(tolerance=1e-13))

    np.testing.assert_allclose(
        result.scores, [expected[i] for i in range(net.vertex_count)], atol=1e-8
    )


def test_alpha_is_taken_from_config():
    chain = ingest_edge_list([("a", "b"), ("b", "c")], mode="www")
    low = pagerank(chain, RunConfig(alpha=0.5)).scores
    high = pagerank(chain, RunConfig(alpha=0.95)).scores

    assert high[2] > low[2]


@pytest.mark.parametrize("seed", range(10))
def test_scores_follow_their_vertices_under_relabeling(seed, oracle_cfg):
    net = random_network(seed + 100, weighted=seed % 2 == 1)
    order = np.random.default_rng(seed).permutation(net.vertex_count)

    before = by_label(pagerank(net, oracle_cfg))
    after = by_label(pagerank(permuted(net, order), oracle_cfg))

    assert set(before) == set(after)
    for vertex, score in before.items():
        assert after[vertex] == pytest.approx(score, abs=1e-10)


@pytest.mark.parametrize("n, steps", [(6, (1,)), (11, (1, 2, 5)), (20, (3, 7))])
def test_regular_strongly_connected_graph_is_uniform(n, steps):
    net = ingest_edge_list(
        [(f"v{i}", f"v{(i + s) % n}") for i in range(n) for s in steps], mode="www"
    )
    cfg = RunConfig(tolerance=1e-10)

    result = pagerank(net, cfg)

    assert np.abs(result.scores - 1.0 / n).sum() <= 10 * cfg.tolerance
