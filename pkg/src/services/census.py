"""
Triangle and open-triad census by link composition.

Kernels work edge-wise on CSR adjacency matrices: for a chunk of edges
``(u, v)`` the row-wise product ``X[u] * Y[v]`` counts the common neighbors
reached through layer X from u and layer Y from v. Chunking bounds memory
and does not change the result.
"""

from typing import Optional, Tuple, Union

import numpy as np
from scipy import sparse

from src.models.census import MotifCensus, OpenTriadCounts, TriadTotals, TriangleCounts
from src.models.graph import TwoLayerGraph
from src.models.observed import ObservedNetwork
from src.utils.logger import get_logger
from src.utils.settings import get_settings

logger = get_logger(__name__)

GraphLike = Union[TwoLayerGraph, ObservedNetwork]


def _as_graph(graph: GraphLike) -> TwoLayerGraph:
    # Naming directions are irrelevant to the census
    if isinstance(graph, ObservedNetwork):
        return graph.to_graph()[0]
    return graph


def _common_neighbor_total(
    left: sparse.csr_matrix,
    right: sparse.csr_matrix,
    edges: np.ndarray,
    chunk_size: Optional[int] = None,
) -> int:
    """Sum over edges (u, v) of |left(u) ∩ right(v)|."""
    if edges.size == 0:
        return 0
    chunk_size = chunk_size or get_settings().census_chunk_size
    total = 0
    for start in range(0, edges.shape[0], chunk_size):
        block = edges[start:start + chunk_size]
        overlap = left[block[:, 0]].multiply(right[block[:, 1]])
        total += int(overlap.sum())
    return total


def _layers(graph: TwoLayerGraph) -> Tuple[sparse.csr_matrix, sparse.csr_matrix]:
    return graph.strong.to_csr(), graph.weak.to_csr()


def triangle_census(graph: GraphLike, chunk_size: Optional[int] = None) -> TriangleCounts:
    """
    Count triangles by composition.

    Args:
        graph: Two-layer graph, or an observed network treated as one
        chunk_size: Edges per sparse product block (settings default)

    Returns:
        TriangleCounts (t_s3, t_s2w, t_sw2, t_w3)
    """
    graph = _as_graph(graph)
    strong, weak = _layers(graph)
    strong_edges = graph.strong.edge_array()
    weak_edges = graph.weak.edge_array()

    # An all-strong triangle is seen from each of its three strong edges
    ss_on_strong = _common_neighbor_total(strong, strong, strong_edges, chunk_size)
    ss_on_weak = _common_neighbor_total(strong, strong, weak_edges, chunk_size)
    ww_on_strong = _common_neighbor_total(weak, weak, strong_edges, chunk_size)
    ww_on_weak = _common_neighbor_total(weak, weak, weak_edges, chunk_size)

    counts = TriangleCounts(
        t_s3=ss_on_strong // 3,
        t_s2w=ss_on_weak,
        t_sw2=ww_on_strong,
        t_w3=ww_on_weak // 3,
    )
    logger.debug("Triangle census", **counts._asdict())
    return counts


def triad_totals_from_degrees(graph: TwoLayerGraph) -> TriadTotals:
    """Exact triad totals from the degree sequences."""
    strong = graph.strong_degrees()
    weak = graph.weak_degrees()
    return TriadTotals(
        tau_ss=int((strong * (strong - 1) // 2).sum()),
        tau_sw=int((strong * weak).sum()),
        tau_ww=int((weak * (weak - 1) // 2).sum()),
    )


def open_triad_census(graph: GraphLike, chunk_size: Optional[int] = None) -> OpenTriadCounts:
    """
    Count open triads by the composition of the two ego-incident links.

    A triad is open when its two leaves share no link in either layer. Closed
    triads are counted per linked leaf pair and subtracted from the totals.
    """
    graph = _as_graph(graph)
    strong, weak = _layers(graph)
    leaf_pairs = np.concatenate([graph.strong.edge_array(), graph.weak.edge_array()])

    closed_ss = _common_neighbor_total(strong, strong, leaf_pairs, chunk_size)
    closed_sw = _common_neighbor_total(strong, weak, leaf_pairs, chunk_size)
    closed_sw += _common_neighbor_total(weak, strong, leaf_pairs, chunk_size)
    closed_ww = _common_neighbor_total(weak, weak, leaf_pairs, chunk_size)

    totals = triad_totals_from_degrees(graph)
    counts = OpenTriadCounts(
        l_ss=totals.tau_ss - closed_ss,
        l_sw=totals.tau_sw - closed_sw,
        l_ww=totals.tau_ww - closed_ww,
    )
    logger.debug("Open triad census", **counts._asdict())
    return counts


def motif_census(graph: GraphLike, chunk_size: Optional[int] = None) -> MotifCensus:
    """Full census of a graph or observed network."""
    graph = _as_graph(graph)
    return MotifCensus(
        triangles=triangle_census(graph, chunk_size),
        open_triads=open_triad_census(graph, chunk_size),
    )
