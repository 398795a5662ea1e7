"""
Accuracy and memory metrics
"""

from typing import Iterable, Mapping, Optional

from core.errors import MetricError
from core.models import StreamStats, Variant


def mre(estimate: Mapping[int, float], truth: Mapping[int, float], nodes: Optional[Iterable[int]] = None) -> float:
    """Mean over nodes of |τ_u − Δ_u| / (Δ_u + 1); missing nodes count as 0"""
    nodes = list(truth if nodes is None else nodes)
    if not nodes:
        raise MetricError("MRE over an empty node set")
    total = 0.0
    for node in nodes:
        delta = truth.get(node, 0.0)
        total += abs(estimate.get(node, 0.0) - delta) / (delta + 1.0)
    return total / len(nodes)


def xi(variant: Variant, stats: StreamStats, memory: Optional[int] = None, p: Optional[float] = None) -> float:
    """Memory proportion: M/m for simple, M/u for multigraph variants, p for MASCOT

    A buffer never holds more edges than the stream has, so the value is capped at 1.
    """
    if variant.is_mascot:
        if p is None:
            raise MetricError(f"{variant.value} needs p")
        return float(p)
    total = stats.distinct if variant.is_multigraph else stats.edges
    if total <= 0:
        raise MetricError(f"memory proportion undefined for an empty stream ({stats.summary()})")
    if memory is None:
        raise MetricError(f"{variant.value} needs M")
    return min(memory, total) / total
