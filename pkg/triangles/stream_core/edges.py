"""
Edge-stream data model
"""

from typing import Iterable, Iterator, NamedTuple

from core.errors import RejectedEdgeError


class Edge(NamedTuple):
    """Undirected edge in canonical order a < b"""
    a: int
    b: int


class StreamEvent(NamedTuple):
    edge: Edge
    time: int  # 1-based arrival index


def timed(edges: Iterable[Edge]) -> Iterator[StreamEvent]:
    """Attach arrival times T = 1, 2, ..."""
    for time, edge in enumerate(edges, start=1):
        yield StreamEvent(edge, time)


def canonicalize_edge(u: int, v: int) -> Edge:
    if u == v:
        raise RejectedEdgeError(f"self-loop on node {u}")
    return Edge(u, v) if u < v else Edge(v, u)
