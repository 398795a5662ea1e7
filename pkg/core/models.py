"""
Data models for the triangle estimation system
"""

from enum import Enum
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, Field

# node id -> (estimated or exact) local triangle count
LocalCounts = Dict[int, float]


class Variant(str, Enum):
    """Estimator family members selectable from the CLI"""
    FURL_S = "furl-s"
    FURL_SX = "furl-sx"
    FURL_MB = "furl-mb"
    FURL_MXB = "furl-mxb"
    FURL_MW = "furl-mw"
    FURL_MXW = "furl-mxw"
    MASCOT = "mascot"
    MASCOT_C = "mascot-c"

    @property
    def is_mascot(self) -> bool:
        return self in (Variant.MASCOT, Variant.MASCOT_C)

    @property
    def is_multigraph(self) -> bool:
        return self in (Variant.FURL_MB, Variant.FURL_MXB, Variant.FURL_MW, Variant.FURL_MXW)

    @property
    def is_smoothed(self) -> bool:
        return self in (Variant.FURL_SX, Variant.FURL_MXB, Variant.FURL_MXW)

    @property
    def is_weighted(self) -> bool:
        return self in (Variant.FURL_MW, Variant.FURL_MXW)

    @property
    def base(self) -> "Variant":
        """The unsmoothed counterpart of an X-variant"""
        return {
            Variant.FURL_SX: Variant.FURL_S,
            Variant.FURL_MXB: Variant.FURL_MB,
            Variant.FURL_MXW: Variant.FURL_MW,
        }.get(self, self)

    @property
    def min_memory(self) -> int:
        if self in (Variant.FURL_MB, Variant.FURL_MXB):
            return 4
        return 3


class StreamStats(BaseModel):
    """Counting pre-pass over an edge stream"""
    nodes: int = 0
    edges: int = 0
    distinct: int = 0

    def summary(self) -> str:
        return f"nodes={self.nodes} edges={self.edges} distinct={self.distinct}"


class TrialReport(BaseModel):
    """One evaluation row; seed is None for the aggregated mean row"""
    variant: Variant
    xi: float = Field(gt=0, le=1)
    delta: float = 0.0
    J: int = 0
    seed: Optional[int] = None
    mre: float = Field(ge=0)
    wall_ms: float = 0.0
    n_nodes: int = 0
    n_edges: int = 0

    def to_row(self) -> Dict[str, object]:
        row = self.model_dump()
        row["variant"] = self.variant.value
        row["seed"] = "mean" if self.seed is None else self.seed
        return row


REPORT_COLUMNS = ["variant", "xi", "delta", "J", "seed", "mre", "wall_ms", "n_nodes", "n_edges"]


class TrialSummary(BaseModel):
    """Per-node mean/standard error of final queries plus per-trial reports"""
    mean: Dict[int, float] = {}
    stderr: Dict[int, float] = {}
    reports: List[TrialReport] = []
    samples: Optional[List[Dict[int, float]]] = None

    @property
    def mean_mre(self) -> float:
        if not self.reports:
            return 0.0
        return sum(r.mre for r in self.reports) / len(self.reports)


class ProbeResult(BaseModel):
    """One line of a probe table"""
    quantity: str
    empirical: float
    predicted: float
    stderr: float = 0.0
    passed: bool

    def to_row(self) -> Dict[str, object]:
        return {
            "quantity": self.quantity,
            "empirical": self.empirical,
            "predicted": self.predicted,
            "stderr": self.stderr,
            "pass": self.passed,
        }


PROBE_COLUMNS = ["quantity", "empirical", "predicted", "stderr", "pass"]


class TriangleProbe(BaseModel):
    """Bookkeeping for one isolated triangle observed across many runs"""
    triangle: Tuple[int, int, int]
    observed_node: int
    t_close: int
    t_m: Optional[int] = None
    t_query: int
    bucket_formed: int = 0
    bucket_current: int = 0
    u_at_close: int = 0
    u_before_close: int = 0
    samples: List[float] = []

    @property
    def span(self) -> int:
        """B - b + 1, the number of averaging steps the triangle has been through"""
        return self.bucket_current - self.bucket_formed + 1
