"""
Common state machine for the streaming local triangle estimators
"""

from abc import ABC, abstractmethod
from typing import Dict, Iterable, Optional

import numpy as np
from loguru import logger

from core.config import EstimatorConfig
from core.errors import BufferContractError, RejectedEdgeError
from core.models import LocalCounts, Variant
from triangles.sample_buffer.buffer import BufferMode, SampleBuffer
from triangles.stream_core.edges import Edge, canonicalize_edge


class TriangleEstimator(ABC):
    """
    Holds the clock T, the raw counts c, the ExactCnt flag and the sample D.
    Subclasses implement one event in `_step`.
    """

    variant: Variant
    buffer_mode: BufferMode = BufferMode.UNIFORM
    # T_M = (overflow time) - overflow_lag
    overflow_lag: int = 0
    # simple-stream estimators may reject an edge that is already sampled
    simple_stream: bool = True

    def __init__(self, config: EstimatorConfig):
        self.config = config
        self.T = 0
        self.counts: Dict[int, float] = {}
        self.exact = True
        self.t_m: Optional[int] = None
        self.rng = np.random.default_rng(config.seed)
        self.buffer = SampleBuffer(self._capacity(), self.buffer_mode, config.hash_seed)
        self.peak_size = 0

    def _capacity(self) -> Optional[int]:
        return self.config.M

    @property
    def M(self) -> int:
        return self.config.M

    def consume(self, u: int, v: int) -> None:
        """Process a raw (u, v) pair"""
        self.process(canonicalize_edge(u, v))

    def process(self, edge: Edge) -> None:
        """Advance the clock and process one canonical edge"""
        if self.config.strict and self.simple_stream and edge in self.buffer:
            raise RejectedEdgeError(f"duplicate edge {tuple(edge)} at T={self.T + 1} in a simple stream")
        self.T += 1
        self.discover(edge.a)
        self.discover(edge.b)
        self._step(edge)
        self._after_step()

        size = len(self.buffer)
        if size > self.peak_size:
            self.peak_size = size
        capacity = self.buffer.capacity
        if self.config.check_memory and capacity is not None and size > capacity:
            raise BufferContractError(f"|D|={size} exceeds M={capacity} at T={self.T}")

    def feed(self, edges: Iterable[Edge]) -> "TriangleEstimator":
        for edge in edges:
            self.process(edge)
        return self

    @abstractmethod
    def _step(self, edge: Edge) -> None:
        ...

    def _after_step(self) -> None:
        pass

    def discover(self, node: int) -> None:
        if node not in self.counts:
            self.counts[node] = 0.0

    def _add(self, node: int, amount: float) -> None:
        self.counts[node] += amount

    def increase_estimation(self, edge: Edge, theta: float) -> int:
        """Credit theta per closed wedge to w, and theta * |N_uv| to u and v"""
        u, v = edge
        common = self.buffer.common_neighbors(u, v)
        if not common:
            return 0
        self.discover(u)
        self.discover(v)
        for w in common:
            self.discover(w)
            self._add(w, theta)
        closed = theta * len(common)
        self._add(u, closed)
        self._add(v, closed)
        return len(common)

    def _leave_exact_phase(self) -> None:
        """First overflow: ExactCnt flips to false, once"""
        self.exact = False
        self.t_m = self.T - self.overflow_lag
        logger.debug(f"{self.variant.value}: buffer overflow at T={self.T}, T_M={self.t_m}")
        self._on_overflow()

    def _on_overflow(self) -> None:
        pass

    def query(self) -> LocalCounts:
        """Current estimate for every discovered node"""
        return dict(self.counts)

    def global_estimate(self) -> float:
        return sum(self.query().values()) / 3.0
