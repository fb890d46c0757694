import io
import json

import pytest

from src.models.enums import Layer
from src.models.graph import TwoLayerGraph
from src.services.graph_io import (
    format_edge_list,
    parse_edge_list,
    read_edge_list,
    read_survey,
    survey_from_dict,
    survey_to_dict,
    write_edge_list,
    write_survey,
)
from src.utils.errors import (
    EdgeListFormatError,
    LayerConflictError,
    NodeOutOfRangeError,
    SelfLoopError,
    SurveyFormatError,
)


def _parse(text: str) -> TwoLayerGraph:
    return parse_edge_list(io.StringIO(text))


def test_parse_edge_list():
    graph = _parse("# comment\nnodes 4\n0 1 s\n2 1 w\n\n3 0 w\n")

    assert graph.node_count == 4
    assert list(graph.strong.edges()) == [(0, 1)]
    assert list(graph.weak.edges()) == [(0, 3), (1, 2)]


def test_format_edge_list_is_sorted():
    graph = TwoLayerGraph.from_edges(5, [(3, 4), (0, 2)], [(1, 4), (0, 1)])

    assert format_edge_list(graph) == "nodes 5\n0 2 s\n3 4 s\n0 1 w\n1 4 w\n"


def test_edge_list_file_round_trip(tmp_path, two_layer_factory):
    graph = two_layer_factory(30, 0.1, 0.2, seed=12)
    path = tmp_path / "graph.txt"
    write_edge_list(graph, path)

    loaded = read_edge_list(path)
    assert format_edge_list(loaded) == path.read_text()


@pytest.mark.parametrize(
    "text, error, line",
    [
        ("nodes 3\n0 0 s\n", SelfLoopError, 2),
        ("nodes 3\n0 1 s\n1 0 w\n", LayerConflictError, 3),
        ("nodes 3\n0 5 w\n", NodeOutOfRangeError, 2),
        ("0 1 s\nnodes 3\n", EdgeListFormatError, 1),
        ("nodes 3\n0 1 x\n", EdgeListFormatError, 2),
        ("nodes 3\n0 a w\n", EdgeListFormatError, 2),
        ("nodes 3\nnodes 4\n", EdgeListFormatError, 2),
        ("# only a comment\n", EdgeListFormatError, 0),
    ],
)
def test_parse_errors_carry_line_numbers(text, error, line):
    with pytest.raises(error) as info:
        _parse(text)

    assert info.value.details["line"] == line


def test_survey_from_dict_adds_reciprocal_strong_namings():
    document = {
        "B": 1,
        "respondents": [
            {"id": 0, "strong": [1], "weak": [5]},
            {"id": 1, "strong": [], "weak": [6]},
        ],
    }
    observed = survey_from_dict(document)

    assert observed.links[(0, 1)].named_by == frozenset({(0, 1), (1, 0)})
    assert observed.links[(0, 5)].layer is Layer.WEAK
    assert observed.budget == 1


def test_survey_rejects_too_many_weak_namings():
    document = {"B": 1, "respondents": [{"id": 0, "weak": [1, 2]}]}

    with pytest.raises(SurveyFormatError):
        survey_from_dict(document)


def test_survey_rejects_duplicate_respondents():
    document = {"B": 1, "respondents": [{"id": 0}, {"id": 0}]}

    with pytest.raises(SurveyFormatError):
        survey_from_dict(document)


def test_survey_rejects_schema_violation():
    with pytest.raises(SurveyFormatError) as info:
        survey_from_dict({"respondents": []})

    assert info.value.code == "survey_format"


def test_survey_rejects_invalid_json(tmp_path):
    path = tmp_path / "survey.json"
    path.write_text("{not json")

    with pytest.raises(SurveyFormatError):
        read_survey(path)


def test_example_survey_loads(example_survey_path):
    observed = read_survey(example_survey_path)

    assert observed.seeds == frozenset({1, 2, 7, 10})
    assert observed.budget == 2
    assert observed.links[(1, 7)].named_by == frozenset({(1, 7), (7, 1)})


def test_survey_export_reloads_identically(tmp_path, example_survey_path):
    observed = read_survey(example_survey_path)
    path = tmp_path / "export.json"
    write_survey(observed, path)

    assert read_survey(path) == observed
    document = json.loads(path.read_text())
    assert [record["id"] for record in document["respondents"]] == [1, 2, 7, 10]
    assert survey_to_dict(observed)["B"] == 2
