import numpy as np
import pytest

from src.models.config import GeneratorConfig, GeneratorParams
from src.models.enums import GeneratorModel
from src.services.generators import (
    generate_single_layer,
    generate_two_layer,
    random_recursive_tree,
    ring_degree,
)
from src.services.graph_ops import degree_moments, global_clustering
from src.utils.errors import InfeasibleTargetError
from src.utils.rng import make_rng


def _config(**overrides) -> GeneratorConfig:
    values = dict(
        node_count=400,
        strong_mean_degree_range=(10.0, 20.0),
        weak_mean_degree_range=(40.0, 60.0),
        weak_degree_floor=10,
    )
    values.update(overrides)
    return GeneratorConfig(**values)


def _edge_sets(graph):
    return list(graph.strong.edges()), list(graph.weak.edges())


def test_two_layer_is_deterministic():
    """The same stream state yields the same graph."""
    config = _config()
    first = generate_two_layer(config, make_rng(7, 0, 0))
    second = generate_two_layer(config, make_rng(7, 0, 0))

    assert _edge_sets(first) == _edge_sets(second)


def test_two_layer_differs_across_streams():
    config = _config()
    first = generate_two_layer(config, make_rng(7, 0, 0))
    second = generate_two_layer(config, make_rng(7, 1, 0))

    assert _edge_sets(first) != _edge_sets(second)


def test_two_layer_layers_are_exclusive():
    graph = generate_two_layer(_config(), make_rng(3))
    strong, weak = _edge_sets(graph)

    assert set(strong).isdisjoint(weak)


def test_two_layer_mean_degrees_within_range():
    graph = generate_two_layer(_config(), make_rng(11))
    moments = degree_moments(graph)

    # Random shortcut counts wobble around the drawn target
    assert 9.0 <= moments.ks <= 21.0
    assert 38.0 <= moments.kw <= 62.0


def test_two_layer_weak_floor():
    config = _config(
        node_count=200,
        weak_mean_degree_range=(4.0, 6.0),
        weak_degree_floor=8,
    )
    graph = generate_two_layer(config, make_rng(2))

    assert graph.weak_degrees().min() >= 8


def test_two_layer_infeasible_target():
    config = _config(node_count=15, strong_mean_degree_range=(20.0, 30.0))

    with pytest.raises(InfeasibleTargetError):
        generate_two_layer(config, make_rng(1))


def test_two_layer_requires_modified_ws():
    with pytest.raises(ValueError):
        generate_two_layer(_config(model=GeneratorModel.BA), make_rng(1))


@pytest.mark.parametrize(
    "target, fraction, expected",
    [(15.0, 0.8, 12), (10.0, 0.8, 8), (150.0, 0.8, 120), (1.0, 0.8, 0), (3.0, 1.0, 4)],
)
def test_ring_degree_is_even(target, fraction, expected):
    assert ring_degree(target, fraction) == expected


def test_ba_edge_count():
    """BA grown from a 5-clique: C(5, 2) + 5 * 995 = 4985 edges."""
    config = GeneratorConfig(
        model=GeneratorModel.BA,
        node_count=1000,
        params=GeneratorParams(attachment_count=5),
    )
    graph = generate_single_layer(config, make_rng(4))

    assert graph.node_count == 1000
    assert graph.edge_count == 4985


def test_holme_kim_is_connected_and_sized():
    config = GeneratorConfig(
        model=GeneratorModel.HOLME_KIM,
        node_count=300,
        params=GeneratorParams(attachment_count=3, triad_probability=0.5),
    )
    graph = generate_single_layer(config, make_rng(6))

    assert graph.node_count == 300
    assert graph.degrees().min() >= 1


def test_rrt_is_a_tree():
    graph = random_recursive_tree(500, make_rng(9))

    assert graph.edge_count == 499
    assert graph.degrees().min() >= 1


def test_modified_ws_single_layer():
    config = GeneratorConfig(node_count=300, weak_mean_degree_range=(10.0, 10.0))
    graph = generate_single_layer(config, make_rng(8))

    assert graph.node_count == 300
    assert 8.0 <= graph.degrees().mean() <= 12.0


def test_attachment_count_infeasible():
    config = GeneratorConfig(
        model=GeneratorModel.BA,
        node_count=4,
        params=GeneratorParams(attachment_count=4),
    )

    with pytest.raises(InfeasibleTargetError):
        generate_single_layer(config, make_rng(1))


def test_model_aliases():
    assert GeneratorModel("sw") is GeneratorModel.MODIFIED_WS
    assert GeneratorModel("hk") is GeneratorModel.HOLME_KIM


def test_single_layer_generators_are_deterministic():
    config = GeneratorConfig(model=GeneratorModel.HOLME_KIM, node_count=200)
    first = generate_single_layer(config, make_rng(12, 3))
    second = generate_single_layer(config, make_rng(12, 3))

    assert np.array_equal(first.edge_array(), second.edge_array())


def test_two_layer_weak_degrees_concentrate():
    graph = generate_two_layer(_config(), make_rng(21))
    weak = graph.weak_degrees()

    assert weak.std() < 0.5 * weak.mean()


def test_no_shortcuts_leaves_strong_ring_regular():
    config = _config(
        strong_mean_degree_range=(15.0, 15.0),
        params=GeneratorParams(shortcut_probability=0.0),
    )
    graph = generate_two_layer(config, make_rng(5))

    assert set(graph.strong_degrees().tolist()) == {ring_degree(15.0, 0.8)}


def test_triad_formation_raises_clustering_over_ba():
    def clustering(model, **params):
        config = GeneratorConfig(
            model=model,
            node_count=1000,
            params=GeneratorParams(attachment_count=3, **params),
        )
        return global_clustering(generate_single_layer(config, make_rng(17)))

    assert clustering(GeneratorModel.HOLME_KIM, triad_probability=1.0) > clustering(
        GeneratorModel.BA
    )
