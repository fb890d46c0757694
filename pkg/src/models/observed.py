"""
The sampled network and the survey statistics derived from it.

An ``ObservedNetwork`` is built from naming events ``(namer, named, layer)``.
Links are keyed by the ordered pair ``(u, v)`` with ``u < v`` and remember
which endpoint named which (``named_by``), so a respondent can later be
removed exactly.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Protocol, Tuple

from pydantic import BaseModel, ConfigDict, Field, NonNegativeInt, PositiveInt, model_validator

from src.models.enums import Layer
from src.models.graph import TwoLayerGraph
from src.utils.errors import LayerConflictError, SelfLoopError, SurveyFormatError

Naming = Tuple[int, int]
NamingEvent = Tuple[int, int, Layer]


@dataclass(frozen=True)
class ObservedLink:
    """A link seen in the survey together with its naming directions."""

    u: int
    v: int
    layer: Layer
    named_by: FrozenSet[Naming]

    def named_from(self, node: int) -> bool:
        other = self.v if node == self.u else self.u
        return (node, other) in self.named_by


class ObservedNetwork:
    """Sampled subgraph: seeds, typed links and who named whom.

    Treated as immutable once built; ``remove_respondent`` in the sampler
    service returns a new instance.
    """

    def __init__(
        self,
        seeds: Iterable[int],
        links: Mapping[Tuple[int, int], ObservedLink],
        budget: Optional[int] = None,
        source_node_count: Optional[int] = None,
    ):
        self.seeds: FrozenSet[int] = frozenset(seeds)
        self.links: Dict[Tuple[int, int], ObservedLink] = dict(sorted(links.items()))
        self.budget = budget
        self.source_node_count = source_node_count

    @classmethod
    def from_namings(
        cls,
        seeds: Iterable[int],
        events: Iterable[NamingEvent],
        budget: Optional[int] = None,
        source_node_count: Optional[int] = None,
    ) -> "ObservedNetwork":
        """Collect naming events into links.

        Raises:
            SurveyFormatError: a namer is not a seed
            SelfLoopError: a seed named itself
            LayerConflictError: the same pair was named in both layers
        """
        seed_set = frozenset(seeds)
        layers: Dict[Tuple[int, int], Layer] = {}
        directions: Dict[Tuple[int, int], set] = {}

        for namer, named, layer in events:
            layer = Layer(layer)
            if namer not in seed_set:
                raise SurveyFormatError(f"node {namer} names ties but is not a seed", node=namer)
            if namer == named:
                raise SelfLoopError(f"seed {namer} named itself", node=namer)
            key = (min(namer, named), max(namer, named))
            previous = layers.setdefault(key, layer)
            if previous is not layer:
                raise LayerConflictError(
                    f"pair {key} named as both strong and weak", u=key[0], v=key[1]
                )
            directions.setdefault(key, set()).add((namer, named))

        links = {
            key: ObservedLink(key[0], key[1], layers[key], frozenset(directions[key]))
            for key in layers
        }
        return cls(seed_set, links, budget=budget, source_node_count=source_node_count)

    def naming_events(self) -> Iterator[NamingEvent]:
        """All naming events in deterministic order."""
        for link in self.links.values():
            for namer, named in sorted(link.named_by):
                yield namer, named, link.layer

    def links_in(self, layer: Layer) -> List[ObservedLink]:
        return [link for link in self.links.values() if link.layer is layer]

    def _alters(self, layer: Layer) -> FrozenSet[int]:
        alters = set()
        for link in self.links.values():
            if link.layer is layer:
                alters.update(node for node in (link.u, link.v) if node not in self.seeds)
        return frozenset(alters)

    @cached_property
    def strong_alters(self) -> FrozenSet[int]:
        """Non-seeds named through strong links (S_1^s)."""
        return self._alters(Layer.STRONG)

    @cached_property
    def weak_alters(self) -> FrozenSet[int]:
        """Non-seeds named through weak links (S_1^w)."""
        return self._alters(Layer.WEAK)

    @cached_property
    def nodes(self) -> Tuple[int, ...]:
        """Seeds and every named alter, ascending."""
        present = set(self.seeds)
        for u, v in self.links:
            present.add(u)
            present.add(v)
        return tuple(sorted(present))

    def to_graph(self) -> Tuple[TwoLayerGraph, Dict[int, int]]:
        """The observed network as a dense two-layer graph.

        Returns:
            (graph, index) where ``index`` maps original ids to dense ids
        """
        index = {node: i for i, node in enumerate(self.nodes)}
        strong = [(index[link.u], index[link.v]) for link in self.links_in(Layer.STRONG)]
        weak = [(index[link.u], index[link.v]) for link in self.links_in(Layer.WEAK)]
        return TwoLayerGraph.from_edges(len(index), strong, weak), index

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ObservedNetwork):
            return NotImplemented
        return self.seeds == other.seeds and self.links == other.links

    def __repr__(self) -> str:
        return f"ObservedNetwork(seeds={len(self.seeds)}, links={len(self.links)})"


class SurveyStatistics(Protocol):
    """The seven scalar survey statistics, integer or expected values."""

    n0: float
    n1s: float
    n1w: float
    m0s: float
    m1s: float
    m0w: float
    m1w: float


class Observables(BaseModel):
    """Counts measured on one observed network."""

    model_config = ConfigDict(frozen=True)

    n0: NonNegativeInt
    n1s: NonNegativeInt
    n1w: NonNegativeInt
    m0s: NonNegativeInt
    m1s: NonNegativeInt
    m0w: NonNegativeInt
    m1w: NonNegativeInt
    # Fixed-choice budget of the survey, when known
    budget: Optional[PositiveInt] = None

    @model_validator(mode="after")
    def check_count_bounds(self) -> "Observables":
        if self.m0s > self.n0 * (self.n0 - 1) // 2:
            raise ValueError("m0s exceeds the number of seed pairs")
        if self.budget is not None and self.m1w > self.budget * self.n0:
            raise ValueError("m1w exceeds B weak namings per seed")
        return self


class ExpectedObservables(BaseModel):
    """Model expectations of the survey statistics (real-valued)."""

    model_config = ConfigDict(frozen=True)

    n0: float = Field(ge=0)
    n1s: float = Field(ge=0)
    n1w: float = Field(ge=0)
    m0s: float = Field(ge=0)
    m1s: float = Field(ge=0)
    m0w: float = Field(ge=0)
    m1w: float = Field(ge=0)
