"""
Exact local triangle counts used as ground truth
"""

from bisect import bisect_right
from collections import Counter, defaultdict
from itertools import combinations
from typing import Dict, Iterable, List, Mapping, Set, Tuple

from core.models import LocalCounts
from triangles.stream_core.edges import Edge, canonicalize_edge


def _sorted_adjacency(edges: Iterable[Edge]) -> Dict[int, List[int]]:
    adjacency: Dict[int, Set[int]] = defaultdict(set)
    for a, b in edges:
        adjacency[a].add(b)
        adjacency[b].add(a)
    return {node: sorted(nbrs) for node, nbrs in adjacency.items()}


def _triangles(edges: Iterable[Edge]) -> Iterable[Tuple[int, int, int]]:
    """Each triangle once as (u, v, w) with u < v < w"""
    adjacency = _sorted_adjacency(edges)
    neighbor_sets = {node: set(nbrs) for node, nbrs in adjacency.items()}
    for u, nbrs in adjacency.items():
        # forward neighbors only
        higher = nbrs[bisect_right(nbrs, u):]
        for i, v in enumerate(higher):
            nv = neighbor_sets[v]
            rest = higher[i + 1:]
            if len(rest) <= len(nv):
                for w in rest:
                    if w in nv:
                        yield u, v, w
            else:
                for w in adjacency[v]:
                    if w > v and w in neighbor_sets[u]:
                        yield u, v, w


def _nodes(edges: Iterable[Edge]) -> Dict[int, float]:
    return {node: 0.0 for edge in edges for node in edge}


def exact_local_simple(edges: Iterable[Edge]) -> LocalCounts:
    """Δ_u for every node of a deduplicated edge set"""
    edges = list(edges)
    counts = _nodes(edges)
    for u, v, w in _triangles(edges):
        counts[u] += 1
        counts[v] += 1
        counts[w] += 1
    return counts


def exact_local_binary(stream: Iterable[Tuple[int, int]]) -> LocalCounts:
    """Triangles of the underlying simple graph of a multigraph stream"""
    return exact_local_simple({canonicalize_edge(u, v) for u, v in stream})


def edge_multiplicities(stream: Iterable[Tuple[int, int]]) -> Counter:
    return Counter(canonicalize_edge(u, v) for u, v in stream)


def exact_local_weighted(stream: Iterable[Tuple[int, int]]) -> LocalCounts:
    """Each triangle contributes O_uv · O_vw · O_uw to each of its nodes"""
    multiplicity = edge_multiplicities(stream)
    counts = _nodes(multiplicity)
    for u, v, w in _triangles(multiplicity):
        weight = multiplicity[Edge(u, v)] * multiplicity[Edge(v, w)] * multiplicity[Edge(u, w)]
        counts[u] += weight
        counts[v] += weight
        counts[w] += weight
    return counts


def brute_force_local(edges: Iterable[Tuple[int, int]]) -> LocalCounts:
    """O(n^3) triple loop, for cross-checking small graphs"""
    edge_set = {canonicalize_edge(u, v) for u, v in edges}
    counts = _nodes(edge_set)
    for u, v, w in combinations(sorted(counts), 3):
        if Edge(u, v) in edge_set and Edge(v, w) in edge_set and Edge(u, w) in edge_set:
            counts[u] += 1
            counts[v] += 1
            counts[w] += 1
    return counts


def global_from_local(counts: Mapping[int, float]) -> float:
    return sum(counts.values()) / 3.0


def degrees(stream: Iterable[Tuple[int, int]]) -> Dict[int, int]:
    """Number of distinct neighbors per node"""
    adjacency = _sorted_adjacency({canonicalize_edge(u, v) for u, v in stream})
    return {node: len(nbrs) for node, nbrs in adjacency.items()}
