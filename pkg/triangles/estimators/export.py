"""
CSV export of local counts
"""

from pathlib import Path
from typing import Dict, Mapping, Optional, TextIO, Union

import pandas as pd

from triangles.stream_core.ingest import NodeInterner


def format_estimate(value: float, digits: int = 10) -> str:
    return f"{value:.{digits}g}"


def counts_frame(counts: Mapping[int, float], interner: NodeInterner, digits: int = 10,
                 degrees: Optional[Dict[int, int]] = None) -> pd.DataFrame:
    """One row per node in id order; node printed as its input token"""
    nodes = sorted(counts)
    columns = {"node": [interner.token(n) for n in nodes]}
    if degrees is not None:
        columns["degree"] = [degrees.get(n, 0) for n in nodes]
    columns["estimate"] = [format_estimate(counts[n], digits) for n in nodes]
    return pd.DataFrame(columns)


def write_counts_csv(target: Union[str, Path, TextIO], counts: Mapping[int, float], interner: NodeInterner,
                     digits: int = 10, degrees: Optional[Dict[int, int]] = None) -> None:
    """`node,estimate` (or `node,degree,estimate` when degrees are given)"""
    frame = counts_frame(counts, interner, digits, degrees)
    frame.to_csv(target, index=False, lineterminator="\n")
