import math
from pathlib import Path

import numpy as np
import pytest

from app.exceptions import ConfigError, InsufficientDataError
from app.schemas.analysis import GrowthHistory
from app.schemas.network import Edge, NetworkMode
from app.services.graph import build_network, degree_summary, export_edge_list
from app.services.netanalysis import (
    degree_profile,
    fit_power_law,
    generate_ba,
    generate_crawl,
    generate_er,
    pa_exponent,
    pa_fit,
)
from app.utils.edgelist import format_edge_rows

FIXTURES = Path(__file__).parent / "fixtures"


# ============================================================
# Generators
# ============================================================

def test_ba_edge_count_and_handshake():
    final = generate_ba(200, 3, seed=1).final
    clique_edges = 3 * 2 // 2

    assert final.vertex_count == 200
    assert final.edge_count == clique_edges + (200 - 3) * 3
    deg = degree_summary(final, weighted=False).deg
    assert deg.sum() == 2 * final.edge_count


def test_ba_edges_point_new_to_old():
    coo = generate_ba(100, 2, seed=4).final.adjacency.tocoo()

    assert np.all(coo.row > coo.col)


def test_ba_is_deterministic_per_seed():
    first = export_edge_list(generate_ba(300, 2, seed=9).final)
    again = export_edge_list(generate_ba(300, 2, seed=9).final)
    other = export_edge_list(generate_ba(300, 2, seed=10).final)

    assert first == again
    assert first != other


def test_ba_golden_edge_list():
    text = format_edge_rows(export_edge_list(generate_ba(5, 1, seed=7).final))

    assert text == (FIXTURES / "ba_n5_m1_seed7.tsv").read_text()
    assert len(text.splitlines()) == 4


def test_ba_snapshots_are_nested():
    history = generate_ba(1000, 3, seed=2, snapshot_every=250)

    assert [s.vertex_count for s in history.snapshots] == [250, 500, 750, 1000]
    for earlier, later in zip(history.snapshots, history.snapshots[1:]):
        assert set(earlier.vertices) <= set(later.vertices)


def test_ba_symmetrize_and_weights():
    plain = generate_ba(50, 2, seed=3).final
    both = generate_ba(50, 2, seed=3, symmetrize=True).final
    traded = generate_ba(50, 2, seed=3, weighted=True).final

    assert both.edge_count == 2 * plain.edge_count
    assert (both.adjacency != both.adjacency.T).nnz == 0
    assert traded.mode is NetworkMode.TRADING
    assert traded.adjacency.data.min() > 0
    assert plain.mode is NetworkMode.WWW


def test_uniform_attachment_grows_same_size():
    final = generate_ba(300, 3, seed=0, attachment="uniform").final

    assert final.edge_count == 3 + 297 * 3


@pytest.mark.parametrize(
    "kwargs",
    [
        {"n": 3, "m_edges": 3},
        {"n": 5, "m_edges": 0},
        {"n": 10, "m_edges": 2, "snapshot_every": 0},
        {"n": 10, "m_edges": 2, "attachment": "random"},
    ],
)
def test_ba_rejects_bad_parameters(kwargs):
    with pytest.raises(ConfigError):
        generate_ba(seed=0, **kwargs)


def test_er_edge_count_within_binomial_band():
    n, p = 200, 0.05
    mean = n * (n - 1) * p
    sd = math.sqrt(n * (n - 1) * p * (1 - p))

    for seed in range(20):
        net = generate_er(n, p, seed=seed)
        assert abs(net.edge_count - mean) <= 4 * sd


def test_er_is_deterministic_and_sparse_for_tiny_p():
    assert export_edge_list(generate_er(50, 0.1, seed=5)) == export_edge_list(
        generate_er(50, 0.1, seed=5)
    )
    tiny = generate_er(20, 1e-4, seed=0)
    isolated = (degree_summary(tiny, weighted=False).deg == 0).sum()
    assert isolated >= 18


def test_er_rejects_bad_probability():
    with pytest.raises(ConfigError):
        generate_er(10, 1.0)


@pytest.mark.parametrize("target", [4.5, 8.0, 12.0, 20.0, 40.0, 47.0])
def test_crawl_graph_hits_target_degree(target):
    net = generate_crawl(2000, mean_degree=target, seed=1)

    assert net.mode is NetworkMode.WWW
    assert net.ranking_matrix().nnz == net.edge_count
    assert 2 * net.edge_count / net.vertex_count == pytest.approx(target, abs=1e-3)


@pytest.mark.parametrize("target", [4.5, 40.0])
def test_crawl_graph_has_heavy_in_and_out_tails(target):
    deg = degree_summary(generate_crawl(2000, mean_degree=target, seed=2), weighted=False)

    assert deg.indeg.max() >= 5 * deg.indeg.mean()
    assert deg.outdeg.max() >= 3 * deg.outdeg.mean()


def test_crawl_graph_is_deterministic_per_seed():
    assert export_edge_list(generate_crawl(300, 6.0, seed=4)) == export_edge_list(
        generate_crawl(300, 6.0, seed=4)
    )


@pytest.mark.parametrize("n, target", [(2, 1.0), (100, 0.0), (100, 60.0)])
def test_crawl_rejects_bad_parameters(n, target):
    with pytest.raises(ConfigError):
        generate_crawl(n, mean_degree=target)


# ============================================================
# Degree distributions
# ============================================================

def test_regular_graph_has_undefined_exponent():
    cycle = build_network(
        (str(i) for i in range(10)),
        [Edge(i, (i + 1) % 10, 1.0) for i in range(10)],
        mode="www",
    )
    profile = degree_profile(cycle)

    assert profile.histogram == {2: 10}
    assert not profile.exponent_defined
    assert profile.mean_degree == 2.0


def test_profile_histogram_invariants():
    net = generate_ba(500, 2, seed=6).final
    profile = degree_profile(net, direction="in")

    assert profile.vertex_count == net.vertex_count
    p_k = profile.p_k
    assert sum(p_k.values()) == pytest.approx(1.0)
    assert sum(k * p for k, p in p_k.items()) == pytest.approx(profile.mean_degree)
    frame = profile.to_frame()
    assert list(frame.columns) == ["k", "p_k"]


def test_profile_needs_two_vertices():
    single = build_network(["a"], [], mode="www")

    with pytest.raises(InsufficientDataError):
        degree_profile(single)


def test_power_law_fit_on_exact_density():
    ks = np.arange(2, 512)
    counts = np.rint(1e7 * ks ** -2.5).astype(np.int64)
    degrees = np.repeat(ks, counts)
    gamma, fit_range = fit_power_law(degrees)

    assert gamma == pytest.approx(2.5, abs=0.15)
    assert fit_range[0] == 2


def test_ba_degree_exponent_in_band():
    profile = degree_profile(generate_ba(10000, 3, seed=0).final)

    assert 2.0 <= profile.gamma <= 3.5


def test_er_prefers_poisson():
    profile = degree_profile(generate_er(2000, 8.0 / 1999, seed=0))

    assert profile.poisson_loglik > profile.powerlaw_loglik


# ============================================================
# Attachment exponent
# ============================================================

def test_pa_exponent_preferential():
    history = generate_ba(10000, 3, seed=0, snapshot_every=1000)

    assert 0.8 <= pa_exponent(history) <= 1.2


def test_pa_exponent_uniform():
    history = generate_ba(10000, 3, seed=0, snapshot_every=1000, attachment="uniform")

    assert -0.2 <= pa_exponent(history) <= 0.2


@pytest.mark.parametrize("seed", range(3))
def test_uniform_history_gets_finer_bins(seed):
    history = generate_ba(10000, 3, seed=seed, snapshot_every=1000, attachment="uniform")
    fit = pa_fit(history)

    assert 1.0 < fit.bin_base < 2.0
    assert len(fit.bin_k) >= 5
    assert -0.2 <= fit.v <= 0.2


def test_pa_fit_rejects_flat_bin_base():
    history = generate_ba(3000, 3, seed=0, snapshot_every=1000)

    with pytest.raises(ConfigError):
        pa_fit(history, bin_base=1.0)


def test_pa_exponent_ignores_labels():
    history = generate_ba(3000, 3, seed=5, snapshot_every=1000)
    relabel = {v: f"node-{int(v) * 7919 % 3001}" for v in history.final.vertices}

    def renamed(net):
        return build_network(
            [relabel[v] for v in net.vertices], net.edges, mode=net.mode, name=net.name
        )

    shuffled = GrowthHistory(tuple(renamed(s) for s in history.snapshots))
    assert pa_exponent(shuffled) == pytest.approx(pa_exponent(history), abs=1e-12)


def test_pa_fit_frame_and_pairs():
    fit = pa_fit(generate_ba(3000, 3, seed=1, snapshot_every=500))

    assert fit.pairs == 5
    assert len(fit.to_frame()) == len(fit.bin_k) >= 5


def test_pa_exponent_needs_two_snapshots():
    with pytest.raises(InsufficientDataError):
        pa_exponent(generate_ba(100, 2, seed=0))


def test_pa_exponent_reports_too_few_bins():
    history = generate_ba(60, 2, seed=0, snapshot_every=30)

    with pytest.raises(InsufficientDataError, match="non-empty degree bins"):
        pa_exponent(history, min_bins=50)


def test_growth_history_must_nest():
    a = build_network(["x", "y"], [Edge(0, 1, 1.0)], mode="www")
    b = build_network(["y", "z"], [Edge(0, 1, 1.0)], mode="www")

    with pytest.raises(InsufficientDataError):
        GrowthHistory((a, b))


# ============================================================
# Acceptance-scale runs
# ============================================================

@pytest.mark.slow
@pytest.mark.parametrize("seed", range(10))
def test_pa_exponent_bands_over_seeds(seed):
    preferential = generate_ba(10000, 3, seed=seed, snapshot_every=1000)
    uniform = generate_ba(10000, 3, seed=seed, snapshot_every=1000, attachment="uniform")

    assert 0.8 <= pa_exponent(preferential) <= 1.2
    assert -0.2 <= pa_exponent(uniform) <= 0.2
