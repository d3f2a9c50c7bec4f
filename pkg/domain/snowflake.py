from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Sequence

import graphviz

from domain.census import nfcs_membership
from domain.limits import DEFAULT_LIMITS, Limits
from domain.modvec import TVector, classify_vector
from domain.pgbridge import rad_coordinates, rad_trace
from domain.submod import CyclicSubmodule, enumerate_nfcs, submodule_elements
from domain.ternion import TernionRing

SCHEMA_VERSION = 1
NODE_WIDTH_BY_RANK = (0.5, 0.3, 0.15)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SnowflakeNode:
    id: int
    vector: TVector
    case: str
    multiplicity: int


@dataclass(frozen=True)
class SnowflakePolygon:
    id: int
    generator: TVector
    trace: str
    members: tuple[int, ...]


@dataclass(frozen=True)
class SnowflakeGraph:
    q: int
    n: int
    nodes: tuple[SnowflakeNode, ...]
    polygons: tuple[SnowflakePolygon, ...]

    def multiplicity_profile(self, polygon: SnowflakePolygon) -> tuple[int, ...]:
        return tuple(sorted((self.nodes[i].multiplicity for i in polygon.members), reverse=True))


def build_snowflake(
    ring: TernionRing,
    n: int,
    limits: Limits = DEFAULT_LIMITS,
    workers: int = 1,
    nfcs: Sequence[CyclicSubmodule] | None = None,
) -> SnowflakeGraph:
    """Nonzero vectors lying in some NFCS against the NFCS themselves."""
    if nfcs is None:
        nfcs = enumerate_nfcs(ring, n, limits, workers)
    membership = nfcs_membership(ring, nfcs)
    vectors = sorted(v for v in membership if not v.is_zero())
    node_ids = {v: i for i, v in enumerate(vectors)}
    nodes = tuple(
        SnowflakeNode(id=i, vector=v, case=str(classify_vector(ring, v)), multiplicity=membership[v])
        for i, v in enumerate(vectors)
    )
    polygons = tuple(
        SnowflakePolygon(
            id=i,
            generator=s.canonical_generator,
            trace=str(rad_trace(ring, s)),
            members=tuple(sorted(node_ids[v] for v in submodule_elements(ring, s) if not v.is_zero())),
        )
        for i, s in enumerate(nfcs)
    )
    logger.debug("Snowflake over GF(%d), n=%d: %d nodes, %d polygons", ring.field.q, n, len(nodes), len(polygons))
    return SnowflakeGraph(q=ring.field.q, n=n, nodes=nodes, polygons=polygons)


def snowflake_to_dict(graph: SnowflakeGraph) -> dict[str, Any]:
    return {
        "schema": SCHEMA_VERSION,
        "q": graph.q,
        "n": graph.n,
        "node_count": len(graph.nodes),
        "polygon_count": len(graph.polygons),
        "nodes": [
            {
                "id": node.id,
                "vector": str(node.vector),
                "rad": str(rad_coordinates(node.vector)) if node.vector.in_rad() else None,
                "case": node.case,
                "multiplicity": node.multiplicity,
            }
            for node in graph.nodes
        ],
        "polygons": [
            {
                "id": polygon.id,
                "generator": str(polygon.generator),
                "trace": polygon.trace,
                "members": list(polygon.members),
            }
            for polygon in graph.polygons
        ],
    }


def snowflake_to_dot(graph: SnowflakeGraph) -> str:
    """DOT source: one node per vector sized by multiplicity class, one cycle per polygon."""
    ranks = {m: r for r, m in enumerate(sorted({node.multiplicity for node in graph.nodes}, reverse=True))}
    dot = graphviz.Graph(name=f"snowflake_q{graph.q}_n{graph.n}", comment="NFCS incidence")
    dot.attr("node", shape="circle", label="", fixedsize="true")
    for node in graph.nodes:
        width = NODE_WIDTH_BY_RANK[min(ranks[node.multiplicity], len(NODE_WIDTH_BY_RANK) - 1)]
        dot.node(f"v{node.id}", width=str(width), tooltip=f"{node.vector} {node.case} x{node.multiplicity}")
    for polygon in graph.polygons:
        members = polygon.members
        for a, b in zip(members, members[1:] + members[:1]):
            dot.edge(f"v{a}", f"v{b}", polygon=str(polygon.id))
    return dot.source
