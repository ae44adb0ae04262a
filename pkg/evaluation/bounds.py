"""
Closed-form tail bounds for the Gray code constructions.
"""
import math
from dataclasses import dataclass

from core.bitcore import NoiseModel


def tail_constant(p: float) -> float:
    """c = (1 - 2p)^2 / (4p + 2)."""
    NoiseModel(p)
    return (1 - 2 * p) ** 2 / (4 * p + 2)


@dataclass(frozen=True)
class TailBoundParams:
    """
    Inputs of the tail bound for a Gray code over an inner code.

    Attributes:
        p: Flip probability
        d: Inner block length
        distance: Inner distance D(C)
        inner_failure: Inner failure probability P_p(C), exact or an upper bound
    """

    p: float
    d: int
    distance: int
    inner_failure: float

    def __post_init__(self):
        NoiseModel(self.p)
        if self.d < 1 or self.distance < 1:
            raise ValueError(f"d and distance must be positive, got {self.d}, {self.distance}")
        if not 0 <= self.inner_failure <= 1:
            raise ValueError(f"inner_failure must be a probability, got {self.inner_failure}")

    @property
    def c(self) -> float:
        return tail_constant(self.p)


def _geometric_head(c: float, t: float) -> float:
    return 2 / (1 - math.exp(-c)) * math.exp(-c * t)


def gray_tail_bound(params: TailBoundParams, t: float) -> float:
    """
    Bound on Pr[|v - decode(encode(v) xor b_p)| >= t] for the constant
    distance construction:

        2/(1 - e^-c) e^-ct + 12 d e^-cD + 5 P_p(C)

    Raises:
        ValueError: If t is negative
    """
    if t < 0:
        raise ValueError(f"t must be non-negative, got {t}")
    c = params.c
    return (_geometric_head(c, t) + 12 * params.d * math.exp(-c * params.distance)
            + 5 * params.inner_failure)


def linear_gray_tail_bound(params: TailBoundParams, t: float) -> float:
    """Same bound for the three-copy linear construction: 9d and 2 P_p(C) terms."""
    if t < 0:
        raise ValueError(f"t must be non-negative, got {t}")
    c = params.c
    return (_geometric_head(c, t) + 9 * params.d * math.exp(-c * params.distance)
            + 2 * params.inner_failure)


def expander_tail_constant(alpha: float) -> float:
    """c at p = alpha/2, (1 - alpha)^2 / (2 alpha + 2); exceeds 9/40 for alpha < 1/4."""
    if not 0 < alpha < 0.25:
        raise ValueError(f"alpha must lie in (0, 1/4), got {alpha}")
    return (1 - alpha) ** 2 / (2 * alpha + 2)


def expander_tail_bound(alpha: float, d: int, t: float) -> float:
    """
    Tail bound for a Gray code over a code correcting alpha*d flips, at p = alpha/2:

        10 e^(-9t/40) + 12 d e^(-(9/40) 2 alpha d) + 5 e^(-alpha d / 6)

    Raises:
        ValueError: If alpha is outside (0, 1/4) or t is negative
    """
    if not 0 < alpha < 0.25:
        raise ValueError(f"alpha must lie in (0, 1/4), got {alpha}")
    if t < 0:
        raise ValueError(f"t must be non-negative, got {t}")
    rate = 9 / 40
    return (10 * math.exp(-rate * t) + 12 * d * math.exp(-rate * 2 * alpha * d)
            + 5 * math.exp(-alpha * d / 6))


def majority_flip_bound(k: int, p: float) -> float:
    """Pr[at least k/2 of k given bits flip] <= exp(-(1 - 2p)^2 k / (4p + 2))."""
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    return math.exp(-tail_constant(p) * k)
