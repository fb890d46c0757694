"""
Graph types: single-layer undirected graphs and exclusive two-layer graphs.

Nodes are dense integers ``0..N-1``. Adjacency lists are kept sorted and
duplicate-free; a CSR adjacency matrix is built lazily for the census
kernels and dropped whenever the graph is mutated.
"""

from bisect import bisect_left, insort
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy import sparse

from src.models.enums import Layer
from src.utils.errors import LayerConflictError, NodeOutOfRangeError, SelfLoopError

Edge = Tuple[int, int]


def _edge_array(edges: Iterable[Edge]) -> np.ndarray:
    array = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64)
    if array.size == 0:
        return np.empty((0, 2), dtype=np.int64)
    return array.reshape(-1, 2)


def _canonical_keys(edges: np.ndarray, node_count: int) -> np.ndarray:
    """Unique ``u * N + v`` keys with ``u < v``."""
    lo = np.minimum(edges[:, 0], edges[:, 1])
    hi = np.maximum(edges[:, 0], edges[:, 1])
    return np.unique(lo * node_count + hi)


def _validate_edges(edges: np.ndarray, node_count: int) -> None:
    if edges.size == 0:
        return
    out_of_range = (edges < 0) | (edges >= node_count)
    if out_of_range.any():
        row = int(np.nonzero(out_of_range.any(axis=1))[0][0])
        u, v = (int(x) for x in edges[row])
        raise NodeOutOfRangeError(
            f"edge ({u}, {v}) outside 0..{node_count - 1}", u=u, v=v, node_count=node_count
        )
    loops = edges[:, 0] == edges[:, 1]
    if loops.any():
        node = int(edges[np.nonzero(loops)[0][0], 0])
        raise SelfLoopError(f"self-loop on node {node}", node=node)


class SingleLayerGraph:
    """Undirected simple graph with sorted adjacency lists."""

    def __init__(self, node_count: int):
        if node_count < 0:
            raise ValueError("node_count must be nonnegative")
        self.node_count = node_count
        self.adjacency: List[List[int]] = [[] for _ in range(node_count)]
        self._edge_count = 0
        self._csr: Optional[sparse.csr_matrix] = None

    @classmethod
    def from_edges(cls, node_count: int, edges: Iterable[Edge]) -> "SingleLayerGraph":
        """Build from an edge iterable; duplicates collapse, self-loops are rejected."""
        graph = cls(node_count)
        array = _edge_array(edges)
        _validate_edges(array, node_count)
        graph._fill(_canonical_keys(array, node_count))
        return graph

    @classmethod
    def from_networkx(cls, nx_graph: nx.Graph) -> "SingleLayerGraph":
        """Convert a networkx graph whose nodes are ``0..N-1``."""
        return cls.from_edges(nx_graph.number_of_nodes(), nx_graph.edges())

    def _fill(self, keys: np.ndarray) -> None:
        n = self.node_count
        lo, hi = keys // max(n, 1), keys % max(n, 1)
        rows = np.concatenate([lo, hi])
        cols = np.concatenate([hi, lo])
        order = np.lexsort((cols, rows))
        rows, cols = rows[order], cols[order]
        bounds = np.searchsorted(rows, np.arange(n + 1))
        self.adjacency = [cols[bounds[i]:bounds[i + 1]].tolist() for i in range(n)]
        self._edge_count = int(keys.size)
        self._csr = None

    def _check_node(self, node: int) -> None:
        if not 0 <= node < self.node_count:
            raise NodeOutOfRangeError(
                f"node {node} outside 0..{self.node_count - 1}",
                node=node,
                node_count=self.node_count,
            )

    def has_edge(self, u: int, v: int) -> bool:
        neighbors = self.adjacency[u]
        index = bisect_left(neighbors, v)
        return index < len(neighbors) and neighbors[index] == v

    def add_edge(self, u: int, v: int) -> bool:
        """Insert ``(u, v)``; returns False when the edge already existed."""
        self._check_node(u)
        self._check_node(v)
        if u == v:
            raise SelfLoopError(f"self-loop on node {u}", node=u)
        if self.has_edge(u, v):
            return False
        insort(self.adjacency[u], v)
        insort(self.adjacency[v], u)
        self._edge_count += 1
        self._csr = None
        return True

    def neighbors(self, node: int) -> Sequence[int]:
        return self.adjacency[node]

    def degree(self, node: int) -> int:
        return len(self.adjacency[node])

    def degrees(self) -> np.ndarray:
        return np.fromiter((len(a) for a in self.adjacency), dtype=np.int64, count=self.node_count)

    @property
    def edge_count(self) -> int:
        return self._edge_count

    def edges(self) -> Iterator[Edge]:
        """Each edge once as ``(u, v)`` with ``u < v``, in lexicographic order."""
        for u, neighbors in enumerate(self.adjacency):
            start = bisect_left(neighbors, u + 1)
            for v in neighbors[start:]:
                yield u, v

    def edge_array(self) -> np.ndarray:
        """``(E, 2)`` array of edges with ``u < v``."""
        if self._edge_count == 0:
            return np.empty((0, 2), dtype=np.int64)
        return np.asarray(list(self.edges()), dtype=np.int64)

    def to_csr(self) -> sparse.csr_matrix:
        """Symmetric 0/1 adjacency matrix (cached until the next mutation)."""
        if self._csr is None:
            n = self.node_count
            lengths = [len(a) for a in self.adjacency]
            indptr = np.zeros(n + 1, dtype=np.int64)
            np.cumsum(lengths, out=indptr[1:])
            indices = np.fromiter(
                (v for neighbors in self.adjacency for v in neighbors),
                dtype=np.int64,
                count=int(indptr[-1]),
            )
            data = np.ones(indices.size, dtype=np.int64)
            self._csr = sparse.csr_matrix((data, indices, indptr), shape=(n, n))
        return self._csr

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.node_count))
        graph.add_edges_from(self.edges())
        return graph


class TwoLayerGraph:
    """Undirected graph with exclusive strong and weak layers."""

    def __init__(self, node_count: int):
        self.node_count = node_count
        self.strong = SingleLayerGraph(node_count)
        self.weak = SingleLayerGraph(node_count)

    @classmethod
    def from_edges(
        cls, node_count: int, strong_edges: Iterable[Edge], weak_edges: Iterable[Edge]
    ) -> "TwoLayerGraph":
        """Build both layers at once, rejecting self-loops and layer overlap."""
        strong = _edge_array(strong_edges)
        weak = _edge_array(weak_edges)
        _validate_edges(strong, node_count)
        _validate_edges(weak, node_count)

        strong_keys = _canonical_keys(strong, node_count)
        weak_keys = _canonical_keys(weak, node_count)
        overlap = np.intersect1d(strong_keys, weak_keys)
        if overlap.size:
            u, v = divmod(int(overlap[0]), node_count)
            raise LayerConflictError(f"pair ({u}, {v}) is in both layers", u=u, v=v)

        graph = cls(node_count)
        graph.strong._fill(strong_keys)
        graph.weak._fill(weak_keys)
        return graph

    @property
    def strong_adjacency(self) -> List[List[int]]:
        return self.strong.adjacency

    @property
    def weak_adjacency(self) -> List[List[int]]:
        return self.weak.adjacency

    def layer(self, layer: Layer) -> SingleLayerGraph:
        return self.strong if layer is Layer.STRONG else self.weak

    def layer_of(self, u: int, v: int) -> Optional[Layer]:
        """Layer holding the pair, or None when unlinked."""
        if self.strong.has_edge(u, v):
            return Layer.STRONG
        if self.weak.has_edge(u, v):
            return Layer.WEAK
        return None

    def add_edge(self, u: int, v: int, layer: Layer) -> "TwoLayerGraph":
        """Add ``(u, v)`` to ``layer``; a duplicate in the same layer is a no-op."""
        layer = Layer(layer)
        if u == v:
            raise SelfLoopError(f"self-loop on node {u}", node=u)
        target = self.layer(layer)
        target._check_node(u)
        target._check_node(v)
        if self.layer(layer.other).has_edge(u, v):
            raise LayerConflictError(
                f"pair ({u}, {v}) already in layer '{layer.other.value}'",
                u=u,
                v=v,
                layer=layer.value,
            )
        target.add_edge(u, v)
        return self

    def strong_degrees(self) -> np.ndarray:
        return self.strong.degrees()

    def weak_degrees(self) -> np.ndarray:
        return self.weak.degrees()

    @property
    def edge_count(self) -> int:
        return self.strong.edge_count + self.weak.edge_count


class DegreeMoments(BaseModel):
    """First and second degree moments of a two-layer graph."""

    model_config = ConfigDict(frozen=True)

    ks: float = Field(ge=0)
    kw: float = Field(ge=0)
    kss: float = Field(ge=0)
    kww: float = Field(ge=0)
    ksw: float = Field(ge=0)

    @model_validator(mode="after")
    def check_cauchy_schwarz(self) -> "DegreeMoments":
        # Relative slack for floating point
        if self.ksw**2 > self.kss * self.kww * (1 + 1e-9) + 1e-12:
            raise ValueError("degree moments violate K_sw^2 <= K_ss * K_ww")
        return self
