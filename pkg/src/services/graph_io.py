"""
Edge-list and survey file formats.

Edge list: ``nodes <N>`` header, then one ``<u> <v> <s|w>`` per line;
``#`` starts a comment line. Survey: JSON document
``{"B": int, "respondents": [{"id": int, "strong": [...], "weak": [...]}]}``.
"""

import json
from pathlib import Path
from typing import Any, Dict, List, Optional, TextIO, Tuple, Union

from pydantic import BaseModel, Field, ValidationError

from src.models.enums import Layer
from src.models.graph import TwoLayerGraph
from src.models.observed import NamingEvent, ObservedNetwork
from src.utils.errors import (
    EdgeListFormatError,
    LayerConflictError,
    NodeOutOfRangeError,
    SelfLoopError,
    SurveyFormatError,
)
from src.utils.logger import get_logger

logger = get_logger(__name__)

PathLike = Union[str, Path]


# ============================================================================
# Edge lists
# ============================================================================


def parse_edge_list(handle: TextIO) -> TwoLayerGraph:
    """Parse an edge list; every error names its 1-based line number."""
    node_count: Optional[int] = None
    seen: Dict[Tuple[int, int], Layer] = {}
    edges: Dict[Layer, List[Tuple[int, int]]] = {Layer.STRONG: [], Layer.WEAK: []}

    for line_number, raw in enumerate(handle, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()

        if fields[0] == "nodes":
            if node_count is not None or len(fields) != 2 or not fields[1].isdigit():
                raise EdgeListFormatError("bad or repeated 'nodes' header", line=line_number)
            node_count = int(fields[1])
            continue

        if node_count is None:
            raise EdgeListFormatError("edge before 'nodes' header", line=line_number)
        if len(fields) != 3 or fields[2] not in ("s", "w"):
            raise EdgeListFormatError(f"expected '<u> <v> <s|w>', got '{line}'", line=line_number)
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise EdgeListFormatError(f"non-integer node id in '{line}'", line=line_number)

        if u == v:
            raise SelfLoopError(f"self-loop on node {u}", node=u, line=line_number)
        if not (0 <= u < node_count and 0 <= v < node_count):
            raise NodeOutOfRangeError(
                f"edge ({u}, {v}) outside 0..{node_count - 1}", u=u, v=v, line=line_number
            )

        layer = Layer(fields[2])
        key = (min(u, v), max(u, v))
        previous = seen.setdefault(key, layer)
        if previous is not layer:
            raise LayerConflictError(
                f"pair {key} already in layer '{previous.value}'",
                u=key[0],
                v=key[1],
                line=line_number,
            )
        edges[layer].append(key)

    if node_count is None:
        raise EdgeListFormatError("missing 'nodes' header", line=0)

    return TwoLayerGraph.from_edges(node_count, edges[Layer.STRONG], edges[Layer.WEAK])


def read_edge_list(path: PathLike) -> TwoLayerGraph:
    with Path(path).open("r", encoding="utf-8") as handle:
        graph = parse_edge_list(handle)
    logger.info("Edge list loaded", path=str(path), nodes=graph.node_count, edges=graph.edge_count)
    return graph


def format_edge_list(graph: TwoLayerGraph) -> str:
    """Deterministic text: strong edges then weak edges, each ascending."""
    lines = [f"nodes {graph.node_count}"]
    lines.extend(f"{u} {v} s" for u, v in graph.strong.edges())
    lines.extend(f"{u} {v} w" for u, v in graph.weak.edges())
    return "\n".join(lines) + "\n"


def write_edge_list(graph: TwoLayerGraph, path: PathLike) -> None:
    Path(path).write_text(format_edge_list(graph), encoding="utf-8")


# ============================================================================
# Survey documents
# ============================================================================


class RespondentRecord(BaseModel):
    id: int = Field(ge=0)
    strong: List[int] = Field(default_factory=list)
    weak: List[int] = Field(default_factory=list)


class SurveyDocument(BaseModel):
    B: int = Field(ge=1)
    respondents: List[RespondentRecord]


def survey_from_dict(document: Dict[str, Any]) -> ObservedNetwork:
    """
    Build an observed network from a survey document.

    Reciprocal strong namings between two respondents are recorded in both
    directions even when only one side declared them.

    Raises:
        SurveyFormatError: schema violation, duplicate respondent, or more
            than B weak namings from one respondent
    """
    try:
        survey = SurveyDocument.model_validate(document)
    except ValidationError as exc:
        raise SurveyFormatError("invalid survey document", errors=exc.errors(include_url=False))

    seeds = [record.id for record in survey.respondents]
    if len(set(seeds)) != len(seeds):
        raise SurveyFormatError("duplicate respondent ids")
    seed_set = set(seeds)

    events: List[NamingEvent] = []
    for record in survey.respondents:
        if len(set(record.weak)) > survey.B:
            raise SurveyFormatError(
                f"respondent {record.id} names {len(set(record.weak))} weak ties, "
                f"budget is {survey.B}",
                respondent=record.id,
            )
        for alter in record.strong:
            events.append((record.id, alter, Layer.STRONG))
            if alter in seed_set:
                events.append((alter, record.id, Layer.STRONG))
        events.extend((record.id, alter, Layer.WEAK) for alter in record.weak)

    observed = ObservedNetwork.from_namings(seed_set, events, budget=survey.B)
    logger.info(
        "Survey loaded", respondents=len(seed_set), links=len(observed.links), budget=survey.B
    )
    return observed


def read_survey(path: PathLike) -> ObservedNetwork:
    with Path(path).open("r", encoding="utf-8") as handle:
        try:
            document = json.load(handle)
        except json.JSONDecodeError as exc:
            raise SurveyFormatError(f"survey is not valid JSON: {exc.msg}", line=exc.lineno)
    return survey_from_dict(document)


def survey_to_dict(observed: ObservedNetwork) -> Dict[str, Any]:
    """Export namings per respondent, ascending."""
    named: Dict[int, Dict[Layer, List[int]]] = {
        seed: {Layer.STRONG: [], Layer.WEAK: []} for seed in observed.seeds
    }
    for namer, alter, layer in observed.naming_events():
        named[namer][layer].append(alter)

    return {
        "B": observed.budget,
        "respondents": [
            {
                "id": seed,
                "strong": sorted(named[seed][Layer.STRONG]),
                "weak": sorted(named[seed][Layer.WEAK]),
            }
            for seed in sorted(named)
        ],
    }


def write_survey(observed: ObservedNetwork, path: PathLike) -> None:
    Path(path).write_text(json.dumps(survey_to_dict(observed), indent=2) + "\n", encoding="utf-8")
