"""
Estimator construction from configuration
"""

from typing import Dict, Type

from core.config import EstimatorConfig
from core.models import Variant
from triangles.estimators.base import TriangleEstimator
from triangles.estimators.furl_multi import FurlMB, FurlMW, FurlMXB, FurlMXW
from triangles.estimators.furl_simple import FurlS, FurlSX
from triangles.estimators.mascot import Mascot, MascotC

ESTIMATORS: Dict[Variant, Type[TriangleEstimator]] = {
    Variant.FURL_S: FurlS,
    Variant.FURL_SX: FurlSX,
    Variant.FURL_MB: FurlMB,
    Variant.FURL_MXB: FurlMXB,
    Variant.FURL_MW: FurlMW,
    Variant.FURL_MXW: FurlMXW,
    Variant.MASCOT: Mascot,
    Variant.MASCOT_C: MascotC,
}


def create_estimator(config: EstimatorConfig) -> TriangleEstimator:
    return ESTIMATORS[config.variant](config)
