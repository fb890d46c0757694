"""
Synthetic network generators.

The two-layer generator builds each layer Newman-Watts style: a ring
lattice carrying ``ring_fraction`` of the target mean degree plus random
shortcut edges added (never rewired) for the remainder. Weak candidates
that land on a strong pair are discarded and redrawn at random, and a
post-pass raises every weak degree to the configured floor.
"""

from typing import List, Optional, Set, Tuple

import networkx as nx
import numpy as np

from src.models.config import GeneratorConfig
from src.models.enums import GeneratorModel
from src.models.graph import SingleLayerGraph, TwoLayerGraph
from src.utils.errors import InfeasibleTargetError
from src.utils.logger import get_logger
from src.utils.rng import networkx_seed

logger = get_logger(__name__)

# Draw attempts per requested edge before giving up on a saturated graph
MAX_ATTEMPTS_PER_EDGE = 100


def _key(u: int, v: int, node_count: int) -> int:
    return min(u, v) * node_count + max(u, v)


def _keys_to_edges(keys: Set[int], node_count: int) -> np.ndarray:
    ordered = np.fromiter(sorted(keys), dtype=np.int64, count=len(keys))
    return np.stack([ordered // node_count, ordered % node_count], axis=1)


def ring_degree(target: float, ring_fraction: float) -> int:
    """Even ring degree nearest ``ring_fraction * target``."""
    return 2 * int(round(ring_fraction * target / 2))


def _check_target(target: float, node_count: int) -> None:
    if target >= node_count - 1:
        raise InfeasibleTargetError(
            f"target mean degree {target:.2f} needs more than {node_count} nodes",
            target=target,
            node_count=node_count,
        )


def _ring_keys(node_count: int, degree: int) -> np.ndarray:
    """Canonical keys of a ring lattice where each node links to ``degree / 2`` successors."""
    nodes = np.arange(node_count, dtype=np.int64)
    keys = [
        np.minimum(nodes, (nodes + offset) % node_count) * node_count
        + np.maximum(nodes, (nodes + offset) % node_count)
        for offset in range(1, degree // 2 + 1)
    ]
    if not keys:
        return np.empty(0, dtype=np.int64)
    return np.unique(np.concatenate(keys))


def _add_random_edges(
    node_count: int,
    count: int,
    taken: Set[int],
    forbidden: Set[int],
    rng: np.random.Generator,
) -> int:
    """Add ``count`` uniformly random new pairs to ``taken``; returns how many were added."""
    added = 0
    attempts = 0
    budget = max(count, 1) * MAX_ATTEMPTS_PER_EDGE
    while added < count:
        if attempts > budget:
            raise InfeasibleTargetError(
                "graph too dense to place random edges", requested=count, placed=added
            )
        batch = rng.integers(0, node_count, size=(max(2 * (count - added), 64), 2))
        for u, v in batch.tolist():
            attempts += 1
            if u == v:
                continue
            key = _key(u, v, node_count)
            if key in taken or key in forbidden:
                continue
            taken.add(key)
            added += 1
            if added == count:
                break
    return added


def _newman_watts_layer(
    node_count: int,
    target: float,
    config: GeneratorConfig,
    rng: np.random.Generator,
    forbidden: Optional[Set[int]] = None,
) -> Tuple[Set[int], int]:
    """
    One Newman-Watts layer as a set of canonical pair keys.

    Returns:
        (keys, ring_degree)
    """
    _check_target(target, node_count)
    forbidden = forbidden or set()
    params = config.params
    base = ring_degree(target, params.ring_fraction)

    taken: Set[int] = set()
    collisions = 0
    for key in _ring_keys(node_count, base).tolist():
        if key in forbidden:
            collisions += 1
        else:
            taken.add(key)

    # Resample ring candidates that collided with the other layer
    if collisions:
        _add_random_edges(node_count, collisions, taken, forbidden, rng)

    ring_edges = node_count * base // 2
    if params.shortcut_probability is not None:
        probability = params.shortcut_probability
    elif base > 0:
        probability = max(target - base, 0.0) / base
    else:
        probability = 0.0

    if base > 0:
        # Probabilities above one add whole shortcut rounds per ring edge
        whole, fraction = divmod(probability, 1.0)
        shortcuts = ring_edges * int(whole) + int(rng.binomial(ring_edges, fraction))
    else:
        shortcuts = int(rng.poisson(node_count * target / 2))
    _add_random_edges(node_count, shortcuts, taken, forbidden, rng)

    logger.debug(
        "Layer generated",
        target=round(target, 3),
        ring_degree=base,
        collisions=collisions,
        shortcuts=shortcuts,
    )
    return taken, base


def _enforce_weak_floor(
    node_count: int,
    floor: int,
    weak: Set[int],
    strong: Set[int],
    rng: np.random.Generator,
) -> int:
    """Top up weak degrees below ``floor`` with random weak partners."""
    if floor <= 0:
        return 0
    edges = _keys_to_edges(weak, node_count)
    degrees = np.zeros(node_count, dtype=np.int64)
    if edges.size:
        degrees += np.bincount(edges.ravel(), minlength=node_count)
    added = 0
    for node in np.nonzero(degrees < floor)[0].tolist():
        attempts = 0
        while degrees[node] < floor:
            attempts += 1
            if attempts > floor * MAX_ATTEMPTS_PER_EDGE:
                raise InfeasibleTargetError(
                    f"cannot raise weak degree of node {node} to {floor}", node=node, floor=floor
                )
            partner = int(rng.integers(0, node_count))
            key = _key(node, partner, node_count)
            if partner == node or key in weak or key in strong:
                continue
            weak.add(key)
            degrees[node] += 1
            degrees[partner] += 1
            added += 1
    return added


def generate_two_layer(config: GeneratorConfig, rng: np.random.Generator) -> TwoLayerGraph:
    """
    Generate an exclusive strong/weak two-layer network.

    Args:
        config: Generator configuration (model must be modified_ws)
        rng: Random stream; the same stream state yields the same graph

    Returns:
        TwoLayerGraph

    Raises:
        InfeasibleTargetError: a drawn target mean degree is >= N - 1
    """
    if config.model is not GeneratorModel.MODIFIED_WS:
        raise ValueError(
            f"two-layer generation supports modified_ws only, got {config.model.value}"
        )

    node_count = config.node_count
    strong_target = float(rng.uniform(*config.strong_mean_degree_range))
    weak_target = float(rng.uniform(*config.weak_mean_degree_range))
    _check_target(strong_target, node_count)
    _check_target(weak_target, node_count)

    strong, _ = _newman_watts_layer(node_count, strong_target, config, rng)
    weak, _ = _newman_watts_layer(node_count, weak_target, config, rng, forbidden=strong)
    topped_up = _enforce_weak_floor(node_count, config.weak_degree_floor or 0, weak, strong, rng)

    graph = TwoLayerGraph.from_edges(
        node_count, _keys_to_edges(strong, node_count), _keys_to_edges(weak, node_count)
    )
    logger.debug(
        "Two-layer graph generated",
        nodes=node_count,
        strong_target=round(strong_target, 3),
        weak_target=round(weak_target, 3),
        strong_edges=graph.strong.edge_count,
        weak_edges=graph.weak.edge_count,
        floor_edges=topped_up,
    )
    return graph


def _attachment_count(config: GeneratorConfig, rng: np.random.Generator) -> int:
    params = config.params
    if params.attachment_count is not None:
        m = params.attachment_count
    else:
        low, high = params.attachment_range
        m = int(rng.integers(low, high + 1))
    if m >= config.node_count:
        raise InfeasibleTargetError(
            f"attachment count {m} needs more than {config.node_count} nodes",
            target=m,
            node_count=config.node_count,
        )
    return m


def random_recursive_tree(node_count: int, rng: np.random.Generator) -> SingleLayerGraph:
    """Each arrival ``i`` attaches to a uniformly random earlier node."""
    arrivals = np.arange(1, node_count, dtype=np.int64)
    parents = np.floor(rng.random(arrivals.size) * arrivals).astype(np.int64)
    return SingleLayerGraph.from_edges(node_count, np.stack([arrivals, parents], axis=1))


def generate_single_layer(config: GeneratorConfig, rng: np.random.Generator) -> SingleLayerGraph:
    """
    Generate a single-layer network of the configured family.

    BA grows from a clique on ``m`` nodes, so it has C(m, 2) + m (N - m)
    edges. Holme-Kim follows each preferential link with a triad-formation
    step. Modified WS uses the weak mean degree range.
    """
    node_count = config.node_count

    if config.model is GeneratorModel.MODIFIED_WS:
        target = float(rng.uniform(*config.weak_mean_degree_range))
        keys, _ = _newman_watts_layer(node_count, target, config, rng)
        return SingleLayerGraph.from_edges(node_count, _keys_to_edges(keys, node_count))

    if config.model is GeneratorModel.RRT:
        return random_recursive_tree(node_count, rng)

    m = _attachment_count(config, rng)
    if config.model is GeneratorModel.BA:
        nx_graph = nx.barabasi_albert_graph(
            node_count, m, seed=networkx_seed(rng), initial_graph=nx.complete_graph(m)
        )
    else:
        probability = config.params.triad_probability
        if probability is None:
            probability = float(rng.uniform(*config.params.triad_probability_range))
        nx_graph = nx.powerlaw_cluster_graph(node_count, m, probability, seed=networkx_seed(rng))

    return SingleLayerGraph.from_networkx(nx_graph)
