"""
Closed-form moments of per-triangle estimates and the thresholds derived from them.

For a triangle λ counted after the exact phase, the base estimate X has mean 1
and variance (factor − 1), where the factor is

    q   = (T−1)(T−2) / (M(M−1))                                simple streams
    k   = (M−3)(u−3)(u−4)(u−5) / (M(M−4)(M−5)(M−6)),  u = u(T_λ)      binary
    l   = (M−2)(u'−2)(u'−3) / (M(M−3)(M−4)),          u' = u(T_λ−1)   weighted

The smoothed estimate Y has mean ψ = 1 − δ^span and variance ψ²(factor − 1),
with span = B − b_λ + 1.
"""

import math
from dataclasses import dataclass
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

from core.errors import ProbeUnsupportedError
from core.models import Variant


def q_factor(T: int, M: int) -> float:
    return ((T - 1) / M) * ((T - 2) / (M - 1))


def k_factor(u: int, M: int) -> float:
    if M < 7:
        raise ProbeUnsupportedError(f"binary variance needs M >= 7, got M={M}")
    return ((M - 3) * (u - 3) * (u - 4) * (u - 5)) / (M * (M - 4) * (M - 5) * (M - 6))


def l_factor(u_prev: int, M: int) -> float:
    if M < 5:
        raise ProbeUnsupportedError(f"weighted variance needs M >= 5, got M={M}")
    return ((M - 2) * (u_prev - 2) * (u_prev - 3)) / (M * (M - 3) * (M - 4))


def second_moment_factor(variant: Variant, M: int, t_close: int, u_at_close: int, u_before_close: int) -> float:
    """E[X²] of a triangle counted at t_close, by counting semantics"""
    base = variant.base
    if base in (Variant.FURL_S, Variant.FURL_SX):
        return q_factor(t_close, M)
    if base is Variant.FURL_MB:
        return k_factor(u_at_close, M)
    if base is Variant.FURL_MW:
        return l_factor(u_before_close, M)
    raise ProbeUnsupportedError(f"no closed-form moments for {variant.value}")


def bucket_of(T: int, t_m: Optional[int], J: int) -> int:
    """0 for T <= T_M, else ceil((T − T_M) / J)"""
    if t_m is None or T <= t_m:
        return 0
    return -(-(T - t_m) // J)


def predicted_expectation(delta: float, span: int, exact: bool = False) -> float:
    if exact:
        return 1.0
    return 1.0 - delta ** span


def predicted_variance(delta: float, span: int, factor: float, exact: bool = False) -> float:
    if exact:
        return 0.0
    psi = 1.0 - delta ** span
    return psi * psi * (factor - 1.0)


def interval(mean: float, variance: float) -> Tuple[float, float]:
    return mean - variance, mean + variance


def strictly_inside(inner: Tuple[float, float], outer: Tuple[float, float]) -> bool:
    return outer[0] < inner[0] and inner[1] < outer[1]


def smoothed_interval_inside(factor: float, delta: float, span: int) -> bool:
    """[E[Y] − Var[Y], E[Y] + Var[Y]] strictly inside [E[X] − Var[X], E[X] + Var[X]]"""
    y = interval(predicted_expectation(delta, span), predicted_variance(delta, span, factor))
    x = interval(1.0, factor - 1.0)
    return strictly_inside(y, x)


def simple_interval_start(M: int) -> int:
    return math.ceil(math.sqrt(2) * M + 1)


def binary_interval_start(M: int) -> int:
    return math.ceil(2 ** (1 / 3) * M + 3)


def weighted_interval_start(M: int) -> int:
    return math.ceil(math.sqrt(2) * M + 2)


@dataclass
class IntervalViolation:
    variant: Variant
    M: int
    delta: float
    span: int
    position: int  # T_λ, u(T_λ) or u(T_λ − 1)
    factor: float


def interval_inclusion_grid(memories: Sequence[int] = (50, 100, 500),
                            deltas: Sequence[float] = (0.1, 0.4, 0.7),
                            max_span: int = 10, positions: int = 200) -> List[IntervalViolation]:
    """Check interval inclusion from each variant's stated starting point onward"""
    families: List[Tuple[Variant, Callable[[int], int], Callable[[int, int], float]]] = [
        (Variant.FURL_SX, simple_interval_start, lambda t, m: q_factor(t, m)),
        (Variant.FURL_MXB, binary_interval_start, lambda u, m: k_factor(u, m)),
        (Variant.FURL_MXW, weighted_interval_start, lambda u, m: l_factor(u, m)),
    ]
    violations: List[IntervalViolation] = []
    for variant, start_of, factor_of in families:
        for M in memories:
            start = start_of(M)
            for position in range(start, start + positions):
                factor = factor_of(position, M)
                for delta in deltas:
                    for span in range(1, max_span + 1):
                        if not smoothed_interval_inside(factor, delta, span):
                            violations.append(IntervalViolation(variant, M, delta, span, position, factor))
    return violations


def _first_above(threshold: float, factor_of: Callable[[int], float], lowest: int) -> int:
    """Smallest integer x >= lowest with factor_of(x) > threshold; factor_of increasing from lowest"""
    hi = max(lowest, 1)
    while factor_of(hi) <= threshold:
        hi *= 2
    lo = lowest
    while lo < hi:
        mid = (lo + hi) // 2
        if factor_of(mid) > threshold:
            hi = mid
        else:
            lo = mid + 1
    return lo


def concentration_ratio(delta: float, span: Optional[int] = None) -> float:
    """(2 − φ)/(1 − φ); φ = δ is the sufficient worst case over spans"""
    phi = delta if span is None else delta ** span
    return (2.0 - phi) / (1.0 - phi)


def concentration_threshold(M: int, delta: float) -> int:
    """Smallest T with q_T > (2 − δ)/(1 − δ)"""
    if M < 3 or not 0 <= delta < 1:
        raise ValueError(f"need M >= 3 and 0 <= delta < 1, got M={M}, delta={delta}")
    return _first_above(concentration_ratio(delta), lambda t: q_factor(t, M), 2)


def binary_concentration_threshold(M: int, delta: float) -> int:
    """Smallest u(T_λ) with k > (2 − δ)/(1 − δ)"""
    return _first_above(concentration_ratio(delta), lambda u: k_factor(u, M), 5)


def weighted_concentration_threshold(M: int, delta: float) -> int:
    """Smallest u(T_λ − 1) with l > (2 − δ)/(1 − δ)"""
    return _first_above(concentration_ratio(delta), lambda u: l_factor(u, M), 3)


def chebyshev_lower_bounds(factor: float, delta: float, span: int) -> Tuple[float, float]:
    """
    Chebyshev lower bounds on P(|Y − 1| < ε) and P(|X − 1| < ε)
    for ε = 1 − E[Y] + Var[Y].
    """
    mean_y = predicted_expectation(delta, span)
    var_y = predicted_variance(delta, span, factor)
    var_x = factor - 1.0
    eps = 1.0 - mean_y + var_y
    return 1.0 - 1.0 / var_y, 1.0 - var_x / (eps * eps)


def chebyshev_gain(factor: float, delta: float, span: int) -> bool:
    """True when the smoothed estimate has the larger concentration bound"""
    if delta <= 0 or factor <= 1:
        return False
    bound_y, bound_x = chebyshev_lower_bounds(factor, delta, span)
    return bound_y > bound_x


def threshold_table(M: int, deltas: Iterable[float]) -> List[Tuple[float, int, float]]:
    """(δ, T*, T*/M) rows"""
    rows = []
    for delta in deltas:
        t_star = concentration_threshold(M, delta)
        rows.append((delta, t_star, t_star / M))
    return rows
