from __future__ import annotations

import json
from collections import Counter, defaultdict

import networkx as nx
import pydot

from domain.gf import field_new
from domain.persistence import dumps_document
from domain.snowflake import build_snowflake, snowflake_to_dict, snowflake_to_dot
from domain.ternion import TernionRing


def _ring() -> TernionRing:
    return TernionRing(field_new(2))


def test_fano_snowflake_shape() -> None:
    graph = build_snowflake(_ring(), 2)
    assert len(graph.nodes) == 63
    assert len(graph.polygons) == 21
    assert all(len(polygon.members) == 7 for polygon in graph.polygons)
    assert {node.multiplicity for node in graph.nodes} == {9, 3, 1}
    for polygon in graph.polygons:
        assert graph.multiplicity_profile(polygon) == (9, 9, 9, 3, 3, 1, 1)


def test_small_snowflake() -> None:
    graph = build_snowflake(_ring(), 1)
    assert len(graph.nodes) == 15
    assert len(graph.polygons) == 3


def test_zero_vector_is_not_a_node() -> None:
    graph = build_snowflake(_ring(), 2)
    assert all(not node.vector.is_zero() for node in graph.nodes)


def test_multiplicities_sum_over_polygons() -> None:
    graph = build_snowflake(_ring(), 2)
    seen = Counter(member for polygon in graph.polygons for member in polygon.members)
    assert all(seen[node.id] == node.multiplicity for node in graph.nodes)


def test_json_export_is_deterministic() -> None:
    first = dumps_document(snowflake_to_dict(build_snowflake(_ring(), 2)))
    second = dumps_document(snowflake_to_dict(build_snowflake(_ring(), 2)))
    assert first == second
    payload = json.loads(first)
    assert payload["schema"] == 1
    assert payload["node_count"] == 63
    assert payload["polygon_count"] == 21
    assert [node["id"] for node in payload["nodes"]] == list(range(63))


def test_json_export_independent_of_workers() -> None:
    serial = dumps_document(snowflake_to_dict(build_snowflake(_ring(), 2, workers=1)))
    parallel = dumps_document(snowflake_to_dict(build_snowflake(_ring(), 2, workers=2)))
    assert serial == parallel


def test_rad_nodes_carry_projective_coordinates() -> None:
    payload = snowflake_to_dict(build_snowflake(_ring(), 2))
    rad_nodes = [node for node in payload["nodes"] if node["rad"] is not None]
    assert len(rad_nodes) == 7
    assert all(node["case"] == "Case2" and node["multiplicity"] == 9 for node in rad_nodes)


def test_dot_export_draws_one_cycle_per_polygon() -> None:
    source = snowflake_to_dot(build_snowflake(_ring(), 2))
    parsed = pydot.graph_from_dot_data(source)
    assert parsed is not None and len(parsed) == 1
    assert parsed[0].get_name() == "snowflake_q2_n2"
    drawing = nx.nx_pydot.from_pydot(parsed[0])
    assert drawing.number_of_nodes() == 63
    assert drawing.number_of_edges() == 21 * 7
    by_polygon: dict[str, list[tuple[str, str]]] = defaultdict(list)
    for a, b, data in drawing.edges(data=True):
        by_polygon[data["polygon"].strip('"')].append((a, b))
    assert len(by_polygon) == 21
    for edges in by_polygon.values():
        cycle = nx.Graph(edges)
        assert cycle.number_of_nodes() == 7
        assert all(degree == 2 for _, degree in cycle.degree())
        assert nx.is_connected(cycle)
