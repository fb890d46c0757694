import numpy as np

from src.models.graph import DegreeMoments, SingleLayerGraph, TwoLayerGraph
from src.utils.errors import EmptyGraphError, NoTriadsError
from src.utils.logger import get_logger

logger = get_logger(__name__)


def degree_moments(graph: TwoLayerGraph) -> DegreeMoments:
    """
    First and second moments of the strong and weak degree sequences.

    Args:
        graph: Two-layer graph

    Returns:
        DegreeMoments with K_s, K_w, K_ss, K_ww and K_sw

    Raises:
        EmptyGraphError: graph has no nodes
    """
    if graph.node_count == 0:
        raise EmptyGraphError("degree moments of an empty graph")

    strong = graph.strong_degrees().astype(np.float64)
    weak = graph.weak_degrees().astype(np.float64)
    return DegreeMoments(
        ks=float(strong.mean()),
        kw=float(weak.mean()),
        kss=float((strong * strong).mean()),
        kww=float((weak * weak).mean()),
        ksw=float((strong * weak).mean()),
    )


def collapse(graph: TwoLayerGraph) -> SingleLayerGraph:
    """Union of both layers with link types discarded."""
    edges = np.concatenate([graph.strong.edge_array(), graph.weak.edge_array()])
    return SingleLayerGraph.from_edges(graph.node_count, edges)


def triangle_count(graph: SingleLayerGraph) -> int:
    """Triangles via the masked product ``(A @ A) * A``; each is seen six times."""
    adjacency = graph.to_csr()
    closed = (adjacency @ adjacency).multiply(adjacency)
    return int(closed.sum()) // 6


def triad_count(graph: SingleLayerGraph) -> int:
    degrees = graph.degrees()
    return int((degrees * (degrees - 1) // 2).sum())


def global_clustering(graph: SingleLayerGraph) -> float:
    """
    Global clustering coefficient 3T / sum_i C(k_i, 2).

    Raises:
        NoTriadsError: no node has two neighbors
    """
    triads = triad_count(graph)
    if triads == 0:
        raise NoTriadsError("clustering coefficient undefined without triads")

    triangles = triangle_count(graph)
    coefficient = 3 * triangles / triads
    logger.debug("Global clustering", triangles=triangles, triads=triads, cc=coefficient)
    return coefficient
