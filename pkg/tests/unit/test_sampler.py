import numpy as np
import pytest

from src.models.config import SamplingConfig
from src.models.enums import InsufficientWeakPolicy, Layer
from src.models.graph import TwoLayerGraph
from src.models.observed import ObservedNetwork
from src.services.sampler import conduct_survey, observables, remove_respondent
from src.utils.errors import (
    DegenerateSampleError,
    InsufficientWeakTiesError,
    LayerConflictError,
    NotASeedError,
    SurveyFormatError,
)
from src.utils.rng import make_rng


def _sampling(q=0.3, budget=2, policy=InsufficientWeakPolicy.REPORT_ALL) -> SamplingConfig:
    return SamplingConfig(q=q, budget=budget, insufficient_weak_policy=policy)


def test_survey_names_all_strong_and_budget_weak(two_layer_factory):
    """Every seed names all strong ties and min(B, k_w) weak ties."""
    graph = two_layer_factory(60, 0.1, 0.3, seed=2)
    observed = conduct_survey(graph, _sampling(q=0.4, budget=3), make_rng(1))

    strong_named = {}
    weak_named = {}
    for namer, named, layer in observed.naming_events():
        target = strong_named if layer is Layer.STRONG else weak_named
        target.setdefault(namer, set()).add(named)

    for seed in observed.seeds:
        assert strong_named.get(seed, set()) == set(graph.strong_adjacency[seed])
        weak = weak_named.get(seed, set())
        assert len(weak) == min(3, len(graph.weak_adjacency[seed]))
        assert weak <= set(graph.weak_adjacency[seed])


def test_survey_is_deterministic(two_layer_factory):
    graph = two_layer_factory(80, 0.1, 0.3, seed=4)
    first = conduct_survey(graph, _sampling(), make_rng(9, 0, 0, 1))
    second = conduct_survey(graph, _sampling(), make_rng(9, 0, 0, 1))

    assert first == second


def test_survey_q_one_selects_everyone(two_layer_factory):
    graph = two_layer_factory(20, 0.2, 0.4, seed=5)
    observed = conduct_survey(graph, _sampling(q=1.0, budget=50), make_rng(0))

    assert observed.seeds == frozenset(range(20))
    assert len(observed.links) == graph.edge_count


def test_survey_degenerate_sample():
    graph = TwoLayerGraph.from_edges(3, [(0, 1)], [(1, 2)])

    with pytest.raises(DegenerateSampleError):
        conduct_survey(graph, _sampling(q=1e-12), make_rng(0))


def test_survey_error_policy_on_short_weak_degree():
    graph = TwoLayerGraph.from_edges(3, [(0, 1)], [(1, 2)])
    config = _sampling(q=1.0, budget=2, policy=InsufficientWeakPolicy.ERROR)

    with pytest.raises(InsufficientWeakTiesError):
        conduct_survey(graph, config, make_rng(0))


def test_observables_hand_example():
    """Seeds {0, 1}; the 0-1 strong link is named from both ends and counted once."""
    events = [
        (0, 1, Layer.STRONG),
        (1, 0, Layer.STRONG),
        (0, 2, Layer.STRONG),
        (0, 3, Layer.WEAK),
        (1, 3, Layer.WEAK),
        (1, 4, Layer.WEAK),
    ]
    stats = observables(ObservedNetwork.from_namings([0, 1], events, budget=2))

    assert stats.n0 == 2
    assert stats.n1s == 1
    assert stats.n1w == 2
    assert stats.m0s == 1
    assert stats.m1s == 1
    assert stats.m0w == 0
    assert stats.m1w == 3


def test_doubly_named_weak_link_counts_once():
    events = [(0, 1, Layer.WEAK), (1, 0, Layer.WEAK)]
    stats = observables(ObservedNetwork.from_namings([0, 1], events))

    assert stats.m0w == 1


def test_from_namings_rejects_non_seed_namer():
    with pytest.raises(SurveyFormatError):
        ObservedNetwork.from_namings([0], [(5, 0, Layer.STRONG)])


def test_from_namings_rejects_layer_conflict():
    events = [(0, 1, Layer.STRONG), (1, 0, Layer.WEAK)]

    with pytest.raises(LayerConflictError):
        ObservedNetwork.from_namings([0, 1], events)


def test_remove_respondent_keeps_links_named_by_others():
    events = [
        (0, 1, Layer.STRONG),
        (1, 0, Layer.STRONG),
        (0, 2, Layer.WEAK),
        (1, 3, Layer.WEAK),
    ]
    observed = ObservedNetwork.from_namings([0, 1], events, budget=1)
    reduced = remove_respondent(observed, 0)

    assert reduced.seeds == frozenset({1})
    assert set(reduced.links) == {(0, 1), (1, 3)}
    assert reduced.budget == 1
    # The removed respondent is now an alter of seed 1
    assert reduced.strong_alters == frozenset({0})


def test_remove_respondent_matches_survey_without_seed(two_layer_factory):
    """Dropping seed r equals building the survey from the other seeds' namings."""
    graph = two_layer_factory(50, 0.1, 0.3, seed=8)
    observed = conduct_survey(graph, _sampling(q=0.5, budget=2), make_rng(3))
    respondent = min(observed.seeds)

    reduced = remove_respondent(observed, respondent)
    expected = ObservedNetwork.from_namings(
        observed.seeds - {respondent},
        [event for event in observed.naming_events() if event[0] != respondent],
    )

    assert reduced == expected
    assert respondent not in reduced.seeds


def test_remove_respondent_requires_seed():
    observed = ObservedNetwork.from_namings([0], [(0, 1, Layer.STRONG)])

    with pytest.raises(NotASeedError):
        remove_respondent(observed, 1)


def test_sampler_oracle_matches_expected_counts(two_layer_factory):
    """Averages over many surveys approach the exact expectations."""
    from src.services.forward_model import exact_expected_observables

    graph = two_layer_factory(120, 0.05, 0.15, seed=13)
    config = _sampling(q=0.2, budget=3)
    expected = exact_expected_observables(graph, q=0.2, budget=3)

    draws = []
    for index in range(400):
        try:
            draws.append(observables(conduct_survey(graph, config, make_rng(21, index))))
        except DegenerateSampleError:
            continue
    mean_n0 = np.mean([d.n0 for d in draws])
    mean_m1w = np.mean([d.m1w for d in draws])

    assert mean_n0 == pytest.approx(expected.n0, rel=0.05)
    assert mean_m1w == pytest.approx(expected.m1w, rel=0.08)
