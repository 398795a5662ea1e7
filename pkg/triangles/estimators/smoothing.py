"""
Bucketed decaying average τ̂ ← δτ̂ + (1−δ)c shared by the X-variants.

Bucket 0 is [1, T_M]; later buckets are J events wide. At T == T_M the
average is seeded with a copy of c, and at every later boundary
(T − T_M) % J == 0 it is blended with c.

The dense mode blends every node at each boundary. The lazy mode counts
boundaries and replays the missing blends for a node right before its raw
count changes or it is queried; both modes run the same floating point
operations and agree exactly.
"""

from typing import Dict, Optional

from core.models import LocalCounts


class DecayingAverage:
    def __init__(self, delta: float, bucket: int, lazy: bool = False):
        self.delta = delta
        self.keep = 1.0 - delta
        self.J = bucket
        self.lazy = lazy
        self.t_m: Optional[int] = None
        self.boundaries = 0  # seeding copy included
        self.tau: Dict[int, float] = {}
        self._applied: Dict[int, int] = {}

    def start(self, t_m: int, counts: Dict[int, float], seed_now: bool = False) -> None:
        self.t_m = t_m
        if seed_now:
            self._seed(counts)

    def is_boundary(self, T: int) -> bool:
        return self.t_m is not None and T >= self.t_m and (T - self.t_m) % self.J == 0

    def update(self, T: int, counts: Dict[int, float]) -> None:
        """Per-event WeightedAverage step"""
        if self.t_m is None or T < self.t_m:
            return
        if T == self.t_m:
            self._seed(counts)
        elif (T - self.t_m) % self.J == 0:
            self._blend(counts)

    def _seed(self, counts: Dict[int, float]) -> None:
        self.boundaries += 1
        if not self.lazy:
            self.tau = dict(counts)

    def _blend(self, counts: Dict[int, float]) -> None:
        self.boundaries += 1
        if self.lazy:
            return
        d, k, tau = self.delta, self.keep, self.tau
        for node, c in counts.items():
            tau[node] = d * tau.get(node, 0.0) + k * c

    def discover(self, node: int) -> None:
        # an undiscovered node had c = 0 at every past boundary, so its average is 0
        if self.lazy and node not in self._applied:
            self._applied[node] = self.boundaries
            self.tau[node] = 0.0

    def touch(self, node: int, current: float) -> None:
        """Replay the boundaries a node has missed while its count stayed `current`"""
        if not self.lazy:
            return
        applied = self._applied.get(node, 0)
        pending = self.boundaries - applied
        if pending <= 0:
            return
        if applied == 0:
            tau = current
            pending -= 1
        else:
            tau = self.tau[node]
        d, k = self.delta, self.keep
        while pending:
            blended = d * tau + k * current
            if blended == tau:
                break
            tau = blended
            pending -= 1
        self.tau[node] = tau
        self._applied[node] = self.boundaries

    def query(self, T: int, counts: Dict[int, float], exact: bool) -> LocalCounts:
        if exact or self.t_m is None or T <= self.t_m:
            return dict(counts)
        if self.lazy:
            for node, c in counts.items():
                self.touch(node, c)
        tau = self.tau
        if (T - self.t_m) % self.J == 0:
            return {node: tau.get(node, 0.0) for node in counts}
        d, k = self.delta, self.keep
        return {node: d * tau.get(node, 0.0) + k * c for node, c in counts.items()}


class SmoothingMixin:
    """Wraps a base estimator with the decaying average; place before the base class"""

    def __init__(self, config):
        super().__init__(config)
        self.average = DecayingAverage(config.delta, config.J, lazy=config.lazy_average)

    def discover(self, node: int) -> None:
        if node not in self.counts:
            self.average.discover(node)
        super().discover(node)

    def _add(self, node: int, amount: float) -> None:
        self.average.touch(node, self.counts[node])
        super()._add(node, amount)

    def _on_overflow(self) -> None:
        super()._on_overflow()
        # with lag, T_M has already passed and c still holds c(T_M)
        self.average.start(self.t_m, self.counts, seed_now=self.t_m < self.T)

    def _after_step(self) -> None:
        super()._after_step()
        self.average.update(self.T, self.counts)

    def query(self) -> LocalCounts:
        return self.average.query(self.T, self.counts, self.exact)

    @property
    def tau_hat(self) -> LocalCounts:
        """Smoothed estimate τ̂ as of the last boundary"""
        if self.average.lazy:
            for node, c in self.counts.items():
                self.average.touch(node, c)
        return {node: self.average.tau.get(node, 0.0) for node in self.counts}
