"""
Estimators for multigraph streams over a min-hash distinct-edge sample.

Binary counting counts a triangle once however often its edges repeat;
weighted counting counts it as the product of its edge multiplicities.
"""

from core.models import Variant
from triangles.estimators.base import TriangleEstimator
from triangles.estimators.smoothing import SmoothingMixin
from triangles.sample_buffer.buffer import BufferMode
from triangles.stream_core.edges import Edge


class _MinHashEstimator(TriangleEstimator):
    buffer_mode = BufferMode.MINHASH
    simple_stream = False

    def sample(self, edge: Edge) -> bool:
        """Append while there is room, otherwise apply the min-hash rule"""
        if not self.buffer.is_full:
            self.buffer.append(edge)
            return True
        if self.exact:
            self._leave_exact_phase()
        return self.buffer.replace_minhash(edge)


class FurlMB(_MinHashEstimator):
    """Binary counting; samples first, counts on the post-insertion sample"""

    variant = Variant.FURL_MB
    # the edge that overflows is sampled before it is counted
    overflow_lag = 1

    def weight(self) -> float:
        """((M−3)/M) · h_max^−3"""
        M = self.M
        return ((M - 3) / M) * self.buffer.h_max() ** -3

    def _step(self, edge: Edge) -> None:
        if edge in self.buffer:
            return
        sampled = self.sample(edge)
        if self.exact:
            self.increase_estimation(edge, 1.0)
        elif sampled:
            self.increase_estimation(edge, self.weight())


class FurlMW(_MinHashEstimator):
    """Weighted counting; counts first, then samples or bumps O_e"""

    variant = Variant.FURL_MW

    def weight(self) -> float:
        """((M−2)/M) · h_max^−2"""
        M = self.M
        return ((M - 2) / M) * self.buffer.h_max() ** -2

    def increase_estimation(self, edge: Edge, theta: float) -> int:
        """Credit theta · O_uw · O_vw to w, u and v for every common neighbor w"""
        u, v = edge
        common = self.buffer.common_neighbors(u, v)
        if not common:
            return 0
        self.discover(u)
        self.discover(v)
        occurrence = self.buffer.occurrence
        for w in common:
            uw = Edge(u, w) if u < w else Edge(w, u)
            vw = Edge(v, w) if v < w else Edge(w, v)
            amount = theta * occurrence(uw) * occurrence(vw)
            self.discover(w)
            self._add(w, amount)
            self._add(u, amount)
            self._add(v, amount)
        return len(common)

    def _step(self, edge: Edge) -> None:
        theta = 1.0 if self.exact else self.weight()
        self.increase_estimation(edge, theta)
        if edge in self.buffer:
            self.buffer.increment_occurrence(edge)
        else:
            self.sample(edge)


class FurlMXB(SmoothingMixin, FurlMB):
    variant = Variant.FURL_MXB


class FurlMXW(SmoothingMixin, FurlMW):
    variant = Variant.FURL_MXW
