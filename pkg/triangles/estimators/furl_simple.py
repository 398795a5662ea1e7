"""
Estimators for simple (deduplicated) edge streams
"""

from core.models import Variant
from triangles.estimators.base import TriangleEstimator
from triangles.estimators.smoothing import SmoothingMixin
from triangles.stream_core.edges import Edge


class FurlS(TriangleEstimator):
    """Count against the uniform reservoir first, then sample the edge"""

    variant = Variant.FURL_S

    def weight(self) -> float:
        """q_T = (T−1)(T−2) / (M(M−1))"""
        M, T = self.M, self.T
        return ((T - 1) / M) * ((T - 2) / (M - 1))

    def _step(self, edge: Edge) -> None:
        theta = 1.0 if self.exact else self.weight()
        self.increase_estimation(edge, theta)
        self.sample(edge)

    def sample(self, edge: Edge) -> bool:
        """Reservoir step; an edge that is already sampled is left as it is"""
        if edge in self.buffer:
            return False
        if not self.buffer.is_full:
            self.buffer.append(edge)
            return True
        if self.exact:
            self._leave_exact_phase()
        return self.buffer.replace_uniform(edge, self.T, self.rng)


class FurlSX(SmoothingMixin, FurlS):
    variant = Variant.FURL_SX
