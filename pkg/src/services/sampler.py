from typing import List

import numpy as np

from src.models.config import SamplingConfig
from src.models.enums import InsufficientWeakPolicy, Layer
from src.models.graph import TwoLayerGraph
from src.models.observed import NamingEvent, ObservedNetwork, Observables
from src.utils.errors import DegenerateSampleError, InsufficientWeakTiesError, NotASeedError
from src.utils.logger import get_logger

logger = get_logger(__name__)


def conduct_survey(
    graph: TwoLayerGraph, config: SamplingConfig, rng: np.random.Generator
) -> ObservedNetwork:
    """
    Simulate a fixed-choice survey.

    Each node is a seed with probability q. A seed names all of its strong
    neighbors and a uniform B-subset of its weak neighbors (all of them when
    it has fewer than B under the report_all policy).

    Args:
        graph: Original network
        config: Sampling rate, budget and policy
        rng: Random stream

    Returns:
        ObservedNetwork with every naming event recorded

    Raises:
        DegenerateSampleError: no node was selected
        InsufficientWeakTiesError: a seed has fewer than B weak ties (error policy)
    """
    budget = config.budget
    seeds = np.nonzero(rng.random(graph.node_count) < config.q)[0]
    if seeds.size == 0:
        raise DegenerateSampleError("survey drew no seeds", q=config.q, node_count=graph.node_count)

    if config.insufficient_weak_policy is InsufficientWeakPolicy.ERROR:
        weak_degrees = graph.weak_degrees()[seeds]
        short = np.nonzero(weak_degrees < budget)[0]
        if short.size:
            node = int(seeds[short[0]])
            raise InsufficientWeakTiesError(
                f"seed {node} has {int(weak_degrees[short[0]])} weak ties, budget is {budget}",
                node=node,
                budget=budget,
            )

    events: List[NamingEvent] = []
    for seed in seeds.tolist():
        events.extend((seed, alter, Layer.STRONG) for alter in graph.strong_adjacency[seed])

        weak = graph.weak_adjacency[seed]
        if len(weak) > budget:
            pool = np.asarray(weak, dtype=np.int64)
            chosen = np.sort(rng.choice(pool, size=budget, replace=False))
            named = chosen.tolist()
        else:
            named = weak
        events.extend((seed, alter, Layer.WEAK) for alter in named)

    observed = ObservedNetwork.from_namings(
        seeds.tolist(), events, budget=budget, source_node_count=graph.node_count
    )
    logger.debug(
        "Survey conducted", seeds=len(observed.seeds), links=len(observed.links), q=config.q
    )
    return observed


def observables(observed: ObservedNetwork) -> Observables:
    """Count the seven survey statistics of an observed network."""
    counts = {"m0s": 0, "m1s": 0, "m0w": 0, "m1w": 0}
    seeds = observed.seeds
    for link in observed.links.values():
        # Links between two seeds count once regardless of naming directions
        between_seeds = link.u in seeds and link.v in seeds
        name = ("m0" if between_seeds else "m1") + link.layer.value
        counts[name] += 1

    return Observables(
        n0=len(seeds),
        n1s=len(observed.strong_alters),
        n1w=len(observed.weak_alters),
        budget=observed.budget,
        **counts,
    )


def remove_respondent(observed: ObservedNetwork, respondent: int) -> ObservedNetwork:
    """
    Drop a respondent and every naming event it made.

    Links still named by another seed survive, with the removed respondent
    now an alter.

    Raises:
        NotASeedError: ``respondent`` is not a seed
    """
    if respondent not in observed.seeds:
        raise NotASeedError(f"node {respondent} is not a seed", node=respondent)

    events = [event for event in observed.naming_events() if event[0] != respondent]
    return ObservedNetwork.from_namings(
        observed.seeds - {respondent},
        events,
        budget=observed.budget,
        source_node_count=observed.source_node_count,
    )
