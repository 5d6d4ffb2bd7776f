"""Tests for triangle counts, components, distances, degrees and event frequencies"""

import numpy as np
import pytest
from scipy.sparse import csgraph

from conftest import build_graph
from gpm.core.params import GpmParams
from gpm.generator import generate, generate_rgg, rgg_distances
from gpm.stats import (
    brute_force_triangles,
    components,
    compute_report,
    count_triangles,
    degree_histogram,
    diameter,
    edge_event_frequency,
    graph_distances,
    l_trace_summary,
    max_degree,
    weight_in_cap,
)
from gpm.stats.degrees import degrees_at
from gpm.stats.distances import graph_adjacency


def _all_pairs_diameter(graph):
    hops = csgraph.shortest_path(graph_adjacency(graph), directed=False, unweighted=True)
    finite = hops[np.isfinite(hops)]
    return int(finite.max()) if finite.size else 0


def test_triangle_fixture(triangle_graph):
    assert count_triangles(triangle_graph) == brute_force_triangles(triangle_graph)
    slots, distinct = count_triangles(triangle_graph)
    assert (slots, distinct) == (1, 1)


def test_double_edge_counts_twice():
    graph = build_graph(m=2, n=3, edges=[(2, 1, 1), (2, 2, 1), (3, 1, 1), (3, 2, 2)])
    result = count_triangles(graph)
    assert result.slots == 2
    assert result.distinct == 1
    assert brute_force_triangles(graph) == result


def test_single_edge_per_vertex_has_no_triangles():
    graph = build_graph(m=1, n=4, edges=[(2, 1, 1), (3, 1, 2), (4, 1, 1)])
    assert count_triangles(graph).slots == 0
    graph, _ = generate(GpmParams(m=1, delta=1.0, p=1.0), 300, seed=1)
    assert tuple(count_triangles(graph)) == (0, 0)


def test_self_loops_never_form_triangles():
    graph = build_graph(m=3, n=3, edges=[(2, 1, 1), (3, 1, 1), (3, 2, 2)])
    assert count_triangles(graph).slots == 1


def test_triangles_match_brute_force(random_graphs):
    for graph in random_graphs:
        if graph.n > 30:
            continue
        assert count_triangles(graph) == brute_force_triangles(graph)


@pytest.mark.slow
def test_triangles_match_brute_force_up_to_sixty(random_graphs):
    for graph in random_graphs:
        assert count_triangles(graph) == brute_force_triangles(graph)


def test_components_of_single_vertex(pam_params):
    graph, _ = generate(pam_params, 1, seed=0)
    summary = components(graph)
    assert (summary.count, summary.isolated_count) == (1, 1)
    assert summary.is_connected


def test_star_is_connected():
    graph = build_graph(m=1, n=6, edges=[(b, 1, 1) for b in range(2, 7)])
    count, isolated, sizes = components(graph)
    assert (count, isolated, sizes) == (1, 0, (6,))


def test_components_match_scipy(random_graphs):
    for graph in random_graphs:
        count, labels = csgraph.connected_components(graph_adjacency(graph), directed=False)
        summary = components(graph)
        assert summary.count == count
        sizes = np.bincount(labels)
        assert summary.sizes == tuple(sorted(sizes.tolist(), reverse=True))
        assert summary.isolated_count == int(graph.isolated_mask().sum())
        assert sum(summary.sizes) == graph.n


def test_diameter_small_cases():
    single = build_graph(m=2, n=1, edges=[])
    assert diameter(single).value == 0
    path = build_graph(m=1, n=3, edges=[(2, 1, 1), (3, 1, 2)])
    result = diameter(path)
    assert (result.lower, result.upper, result.exact) == (2, 2, True)


def test_diameter_ignores_disconnected_pairs():
    graph = build_graph(m=1, n=5, edges=[(2, 1, 1), (3, 1, 2), (5, 1, 4)])
    assert diameter(graph).value == 2


def test_diameter_matches_all_pairs(random_graphs):
    for graph in random_graphs:
        expected = _all_pairs_diameter(graph)
        exact = diameter(graph)
        assert exact.exact and exact.value == expected
        fringe = diameter(graph, exact_limit=1, bfs_budget=10_000)
        assert fringe.exact and fringe.value == expected


def test_diameter_of_generated_graph_by_both_methods(geo_params):
    graph, _ = generate(geo_params, 1500, seed=3)
    exact = diameter(graph)
    fringe = diameter(graph, exact_limit=10, bfs_budget=100_000)
    assert fringe.exact
    assert fringe.value == exact.value


def test_diameter_budget_gives_bounds():
    n = 50
    path = build_graph(m=1, n=n, edges=[(b, 1, b - 1) for b in range(2, n + 1)])
    result = diameter(path, exact_limit=1, bfs_budget=3)
    assert result.lower <= n - 1 <= result.upper
    if result.exact:
        assert result.value == n - 1


def test_diameter_is_invariant_under_relabelling(random_graphs):
    rng = np.random.default_rng(5)
    for graph in random_graphs[:30]:
        perm = np.concatenate([[0], rng.permutation(graph.n) + 1])
        relabelled = graph.with_edges(perm[graph.sources], graph.slots, perm[graph.targets])
        assert diameter(relabelled).value == diameter(graph).value
        assert components(relabelled).sizes == components(graph).sizes


def test_max_degree_small_cases():
    single = build_graph(m=3, n=1, edges=[])
    assert max_degree(single) == (1, 6)
    star = build_graph(m=1, n=5, edges=[(b, 1, 1) for b in range(2, 6)])
    assert max_degree(star) == (1, 6)
    assert degree_histogram(star) == {1: 4, 6: 1}


def test_max_degree_matches_linear_scan(random_graphs):
    for graph in random_graphs:
        vertex, degree = max_degree(graph)
        assert degree == max(graph.degree(v) for v in range(1, graph.n + 1))
        assert graph.degree(vertex) == degree
        assert all(graph.degree(v) < degree for v in range(1, vertex))


def test_degree_histogram_sums(random_graphs):
    for graph in random_graphs:
        histogram = degree_histogram(graph)
        assert sum(histogram.values()) == graph.n
        assert sum(k * count for k, count in histogram.items()) == 2 * graph.params.m * graph.n


def test_degrees_at_replays_growth(geo_params):
    graph, _ = generate(geo_params, 100, seed=2)
    assert np.array_equal(degrees_at(graph, graph.n), graph.degrees)
    assert degrees_at(graph, 0).size == 0
    for n in (1, 10, 50):
        assert int(degrees_at(graph, n).sum()) == 2 * geo_params.m * n
    with pytest.raises(ValueError, match="out of range"):
        degrees_at(graph, 101)


def test_weight_in_cap_reproduces_L(geo_params):
    graph, trace = generate(geo_params, 300, seed=9)
    offset = geo_params.m * (2 + geo_params.delta)
    for row in trace.rows[1::37]:
        assert weight_in_cap(graph, row.n, row.n - 1) + offset == pytest.approx(row.L, rel=1e-12)


def test_weight_in_cap_on_full_sphere(pam_params):
    graph, _ = generate(pam_params, 50, seed=1)
    expected = 2 * pam_params.m * 50 + 50 * pam_params.fitness
    assert weight_in_cap(graph, 7, 50) == pytest.approx(expected)


def test_gpm_distances_dominate_rgg_distances(geo_params):
    graph, _ = generate(geo_params, 400, seed=12)
    rgg = generate_rgg(graph.positions, geo_params.r)
    for source in (1, 100, 400):
        gpm_hops = graph_distances(graph, source)
        rgg_hops = rgg_distances(rgg, source)
        reachable = gpm_hops >= 0
        assert np.all(rgg_hops[reachable] >= 0)
        assert np.all(gpm_hops[reachable] >= rgg_hops[reachable])


def test_graph_distances_rejects_bad_source(triangle_graph):
    assert graph_distances(triangle_graph, 1).tolist() == [0, 1, 1]
    with pytest.raises(ValueError, match="out of range"):
        graph_distances(triangle_graph, 4)


def test_forced_self_loop_event(geo_params):
    ensemble = [generate(geo_params, 20, seed=seed)[0] for seed in range(10)]
    result = edge_event_frequency(ensemble, [(1, 1, 1)])
    assert (result.frequency, result.stderr, result.replicas, result.hits) == (1.0, 0.0, 10, 10)
    assert edge_event_frequency(ensemble, []).frequency == 1.0


def test_event_frequency_validation(geo_params):
    ensemble = [generate(geo_params, 20, seed=seed)[0] for seed in range(3)]
    with pytest.raises(ValueError, match="needs vertex 21"):
        edge_event_frequency(ensemble, [(1, 21, 1)])
    with pytest.raises(ValueError, match="forward in time"):
        edge_event_frequency(ensemble, [(5, 3, 1)])
    with pytest.raises(ValueError, match="more than one event"):
        edge_event_frequency(ensemble, [(1, 5, 1), (2, 5, 1)])
    with pytest.raises(ValueError, match="at least one graph"):
        edge_event_frequency([], [(1, 1, 1)])
    other = generate(GpmParams(m=2, delta=1.0, p=0.5), 20, seed=0)[0]
    with pytest.raises(ValueError, match="share parameters"):
        edge_event_frequency(ensemble + [other], [(1, 1, 1)])


def test_event_frequency_of_second_vertex():
    params = GpmParams(m=1, delta=1.0, p=1.0)
    ensemble = [generate(params, 2, seed=seed)[0] for seed in range(1000)]
    result = edge_event_frequency(ensemble, [(1, 2, 1)])
    assert abs(result.frequency - 0.6) < 4 * np.sqrt(0.24 / 1000)


def test_full_report(triangle_graph):
    report = compute_report(triangle_graph)
    data = report.to_dict()
    assert data["triangle_count_slots"] == 1
    assert data["triangle_count_distinct"] == 1
    assert data["is_connected"] is True
    assert data["component_count"] == 1
    assert data["diameter"] == 1
    assert data["max_degree"] == 6
    assert data["self_loops"] == 3
    assert data["l_trace_rows"] == 0
    assert set(data["degree_histogram"]) == {"2", "4", "6"}


def test_report_of_single_vertex(pam_params):
    graph, trace = generate(pam_params, 1, seed=0)
    data = compute_report(graph, trace).to_dict()
    assert data["triangle_count_slots"] == 0
    assert data["max_degree"] == 2 * pam_params.m
    assert data["is_connected"] is True


def test_report_selection(triangle_graph):
    report = compute_report(triangle_graph, statistics=["triangles"])
    assert report.triangle_count_slots == 1
    assert report.max_degree is None
    assert report.diameter is None
    with pytest.raises(ValueError, match="Unknown statistics"):
        compute_report(triangle_graph, statistics=["clustering"])


def test_trace_summary_on_full_sphere(pam_params):
    graph, trace = generate(pam_params, 500, seed=0)
    summary = l_trace_summary(trace, pam_params, i_min_pn=100)
    assert summary.rows == 401
    assert summary.mean == pytest.approx(1.0)
    assert summary.band_hits == summary.rows
    assert summary.band_hit_fraction == 1.0
    assert l_trace_summary(trace, pam_params, i_min_pn=1000).rows == 0
