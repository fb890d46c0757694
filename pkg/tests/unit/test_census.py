from itertools import combinations

import networkx as nx
import numpy as np
import pytest

from src.models.census import MotifCensus, OpenTriadCounts, TriangleCounts, combine_triads
from src.models.enums import Layer
from src.models.graph import SingleLayerGraph, TwoLayerGraph
from src.models.observed import ObservedNetwork
from src.services.census import (
    motif_census,
    open_triad_census,
    triad_totals_from_degrees,
    triangle_census,
)
from src.services.graph_ops import collapse, global_clustering


def brute_force_census(graph: TwoLayerGraph) -> MotifCensus:
    """Reference census by enumerating node triples and ego-centred pairs."""
    triangles = {"t_s3": 0, "t_s2w": 0, "t_sw2": 0, "t_w3": 0}
    for a, b, c in combinations(range(graph.node_count), 3):
        layers = [graph.layer_of(a, b), graph.layer_of(b, c), graph.layer_of(a, c)]
        if None in layers:
            continue
        strong = layers.count(Layer.STRONG)
        name = {3: "t_s3", 2: "t_s2w", 1: "t_sw2", 0: "t_w3"}[strong]
        triangles[name] += 1

    open_triads = {"l_ss": 0, "l_sw": 0, "l_ww": 0}
    for ego in range(graph.node_count):
        neighbors = sorted(set(graph.strong_adjacency[ego]) | set(graph.weak_adjacency[ego]))
        for left, right in combinations(neighbors, 2):
            if graph.layer_of(left, right) is not None:
                continue
            strong = [graph.layer_of(ego, left), graph.layer_of(ego, right)].count(Layer.STRONG)
            name = {2: "l_ss", 1: "l_sw", 0: "l_ww"}[strong]
            open_triads[name] += 1

    return MotifCensus(TriangleCounts(**triangles), OpenTriadCounts(**open_triads))


def test_all_strong_triangle():
    graph = TwoLayerGraph.from_edges(3, [(0, 1), (1, 2), (0, 2)], [])

    assert triangle_census(graph) == TriangleCounts(1, 0, 0, 0)
    assert open_triad_census(graph) == OpenTriadCounts(0, 0, 0)


def test_mixed_triangle_s2w():
    graph = TwoLayerGraph.from_edges(3, [(0, 1), (1, 2)], [(0, 2)])

    assert triangle_census(graph) == TriangleCounts(0, 1, 0, 0)


def test_mixed_triangle_sw2():
    graph = TwoLayerGraph.from_edges(3, [(0, 1)], [(1, 2), (0, 2)])

    assert triangle_census(graph) == TriangleCounts(0, 0, 1, 0)


def test_open_path_compositions():
    """Path 0 -s- 1 -w- 2 plus a weak pendant 1 -w- 3."""
    graph = TwoLayerGraph.from_edges(4, [(0, 1)], [(1, 2), (1, 3)])

    assert open_triad_census(graph) == OpenTriadCounts(l_ss=0, l_sw=2, l_ww=1)
    assert triangle_census(graph) == TriangleCounts(0, 0, 0, 0)


def test_closed_triads_are_not_open():
    """K4 in mixed layers has no open triads at all."""
    strong = [(0, 1), (2, 3)]
    weak = [(0, 2), (0, 3), (1, 2), (1, 3)]
    graph = TwoLayerGraph.from_edges(4, strong, weak)

    assert open_triad_census(graph) == OpenTriadCounts(0, 0, 0)
    assert sum(triangle_census(graph)) == 4


@pytest.mark.parametrize("seed", range(8))
def test_census_matches_brute_force(two_layer_factory, seed):
    graph = two_layer_factory(24, 0.12, 0.25, seed=seed)

    assert motif_census(graph) == brute_force_census(graph)


def test_census_independent_of_chunk_size(two_layer_factory):
    graph = two_layer_factory(40, 0.1, 0.2, seed=17)

    assert motif_census(graph, chunk_size=3) == motif_census(graph, chunk_size=10_000)


@pytest.mark.parametrize("seed", [4, 9])
def test_census_invariant_under_relabeling(two_layer_factory, seed):
    graph = two_layer_factory(40, 0.1, 0.2, seed=seed)
    relabel = np.random.default_rng(seed).permutation(graph.node_count).tolist()
    permuted = TwoLayerGraph.from_edges(
        graph.node_count,
        [(relabel[u], relabel[v]) for u, v in graph.strong.edges()],
        [(relabel[u], relabel[v]) for u, v in graph.weak.edges()],
    )

    assert motif_census(permuted) == motif_census(graph)


def test_triad_totals_identity(two_layer_factory):
    """Open plus closed triads reproduce the degree-based totals."""
    graph = two_layer_factory(30, 0.15, 0.2, seed=21)
    census = motif_census(graph)

    assert census.triad_totals == triad_totals_from_degrees(graph)
    assert combine_triads(census.open_triads, census.triangles) == census.triad_totals


def test_census_clustering_matches_collapsed_graph(two_layer_factory):
    graph = two_layer_factory(35, 0.1, 0.2, seed=2)
    census = motif_census(graph)

    expected = global_clustering(collapse(graph))
    assert 3 * census.triangle_total / census.triad_total == pytest.approx(expected)


def test_census_matches_networkx_triangles(two_layer_factory):
    graph = two_layer_factory(50, 0.08, 0.12, seed=6)
    triangles = sum(nx.triangles(collapse(graph).to_networkx()).values()) // 3

    assert sum(triangle_census(graph)) == triangles


def test_census_of_observed_network():
    events = [
        (0, 1, Layer.STRONG),
        (0, 2, Layer.STRONG),
        (1, 2, Layer.WEAK),
        (1, 3, Layer.WEAK),
    ]
    observed = ObservedNetwork.from_namings([0, 1], events)
    census = motif_census(observed)

    assert census.triangles == TriangleCounts(0, 1, 0, 0)
    # Ego 1: (0 strong, 3 weak) is open, (2 weak, 3 weak) is open
    assert census.open_triads == OpenTriadCounts(l_ss=0, l_sw=1, l_ww=1)


def test_census_of_empty_graph():
    census = motif_census(TwoLayerGraph(5))

    assert census.triangle_total == 0
    assert census.triad_total == 0


def test_single_layer_graph_clustering_consistency():
    nx_graph = nx.les_miserables_graph()
    relabelled = nx.convert_node_labels_to_integers(nx_graph)
    graph = SingleLayerGraph.from_networkx(relabelled)

    assert global_clustering(graph) == pytest.approx(nx.transitivity(relabelled))
