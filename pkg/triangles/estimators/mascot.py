"""
MASCOT baselines: Bernoulli edge sampling with probability p and unbounded memory
"""

from typing import Optional

from core.models import Variant
from triangles.estimators.base import TriangleEstimator
from triangles.stream_core.edges import Edge


class Mascot(TriangleEstimator):
    """Count every arriving edge with weight p^−2, then keep it with probability p"""

    variant = Variant.MASCOT

    def __init__(self, config):
        super().__init__(config)
        self.p = float(config.p)
        self.exact = self.p == 1.0

    def _capacity(self) -> Optional[int]:
        return None

    def _step(self, edge: Edge) -> None:
        self.increase_estimation(edge, self.p ** -2)
        if self.rng.random() < self.p and edge not in self.buffer:
            self.buffer.append(edge)


class MascotC(Mascot):
    """Keep the edge with probability p first; only kept edges count, with weight p^−3"""

    variant = Variant.MASCOT_C

    def _step(self, edge: Edge) -> None:
        if self.rng.random() < self.p:
            self.increase_estimation(edge, self.p ** -3)
            if edge not in self.buffer:
                self.buffer.append(edge)
