"""
Synthetic edge streams for tests, sweeps and probes
"""

from typing import List, Sequence, Tuple

import networkx as nx
import numpy as np

from triangles.stream_core.edges import Edge, canonicalize_edge
from triangles.stream_core.preprocess import shuffle_stream


def graph_edges(graph: nx.Graph, seed: int) -> List[Edge]:
    """Canonical edges of a networkx graph in a seeded random order"""
    edges = sorted(canonicalize_edge(int(u), int(v)) for u, v in graph.edges() if u != v)
    return shuffle_stream(edges, seed)


def erdos_renyi_edges(n: int, p: float, seed: int = 0) -> List[Edge]:
    return graph_edges(nx.gnp_random_graph(n, p, seed=seed), seed)


def preferential_attachment_edges(n: int, m: int, seed: int = 0) -> List[Edge]:
    return graph_edges(nx.barabasi_albert_graph(n, m, seed=seed), seed)


def duplicate_stream(edges: Sequence[Edge], max_multiplicity: int, seed: int = 0) -> List[Edge]:
    """Repeat every edge 1..max_multiplicity times and shuffle the result"""
    rng = np.random.default_rng(seed)
    repeated: List[Edge] = []
    for edge in edges:
        repeated.extend([edge] * int(rng.integers(1, max_multiplicity + 1)))
    return shuffle_stream(repeated, seed + 1)


def planted_clique_edges(n: int, p: float, clique_size: int, density: float = 1.0,
                         seed: int = 0) -> Tuple[List[Edge], List[int]]:
    """Sparse random background with a near-clique on randomly chosen nodes"""
    rng = np.random.default_rng(seed)
    graph = nx.gnp_random_graph(n, p, seed=seed)
    members = sorted(int(x) for x in rng.choice(n, size=clique_size, replace=False))
    for i, u in enumerate(members):
        for v in members[i + 1:]:
            if rng.random() < density:
                graph.add_edge(u, v)
    return graph_edges(graph, seed), members


PROBE_TRIANGLE = (0, 1, 2)


def probe_stream(t_close: int, length: int, multiplicity: int = 1) -> List[Edge]:
    """
    One triangle on nodes 0, 1, 2 among node-disjoint filler edges.

    The wedge (0,1), (0,2) arrives at T = 1, 2 and the closing edge (1,2) at
    T = t_close. Each filler edge repeats `multiplicity` times in a row, so
    u(T) grows about T / multiplicity.
    """
    if not 3 <= t_close <= length:
        raise ValueError(f"need 3 <= t_close <= length, got t_close={t_close}, length={length}")
    stream: List[Edge] = [Edge(0, 1), Edge(0, 2)]
    next_node = 3
    while len(stream) < length:
        if len(stream) == t_close - 1:
            stream.append(Edge(1, 2))
            continue
        filler = Edge(next_node, next_node + 1)
        next_node += 2
        for _ in range(multiplicity):
            if len(stream) == t_close - 1 or len(stream) == length:
                break
            stream.append(filler)
    return stream
