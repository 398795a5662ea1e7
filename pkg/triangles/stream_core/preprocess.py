"""
Offline stream preparation: simplification, shuffling and distinct-edge accounting
"""

from typing import Iterable, Iterator, List, Sequence, Set, Tuple

import numpy as np

from core.models import StreamStats
from triangles.stream_core.edges import Edge, canonicalize_edge


def _canonical(pairs: Iterable[Tuple[int, int]]) -> Iterator[Edge]:
    for u, v in pairs:
        if u != v:
            yield canonicalize_edge(u, v)


def preprocess_simple(pairs: Iterable[Tuple[int, int]]) -> Iterator[Edge]:
    """Drop self-loops and direction, keep the first occurrence of each edge"""
    seen: Set[Edge] = set()
    for edge in _canonical(pairs):
        if edge not in seen:
            seen.add(edge)
            yield edge


def preprocess_multi(pairs: Iterable[Tuple[int, int]]) -> Iterator[Edge]:
    """Drop self-loops and direction, keep duplicates in order"""
    return _canonical(pairs)


def shuffle_stream(edges: Sequence[Edge], seed: int) -> List[Edge]:
    """Seeded Fisher-Yates permutation"""
    shuffled = list(edges)
    rng = np.random.default_rng(seed)
    for i in range(len(shuffled) - 1, 0, -1):
        j = int(rng.integers(0, i + 1))
        shuffled[i], shuffled[j] = shuffled[j], shuffled[i]
    return shuffled


def distinct_edge_count(edges: Iterable[Tuple[int, int]]) -> int:
    return len({canonicalize_edge(u, v) for u, v in edges})


def stream_stats(edges: Sequence[Edge]) -> StreamStats:
    nodes = {node for edge in edges for node in edge}
    return StreamStats(nodes=len(nodes), edges=len(edges), distinct=distinct_edge_count(edges))


def distinct_prefix_counts(edges: Sequence[Edge]) -> List[int]:
    """u(T) for T = 0..len(edges); index T holds the distinct count after T events"""
    seen: Set[Edge] = set()
    counts = [0]
    for edge in edges:
        seen.add(edge)
        counts.append(len(seen))
    return counts
