"""
Noise mechanisms: discrete Laplace and randomized response.
"""
import math

import numpy as np

from core.bitcore import RandomSource


def discrete_laplace(rng: RandomSource, scale: float, size=None):
    """
    Integer noise with Pr[k] proportional to exp(-|k|/scale).

    Sampled as the difference of two geometric variables with success
    probability 1 - exp(-1/scale).

    Args:
        rng: Randomness
        scale: Positive scale
        size: Output shape, a single int when None

    Raises:
        ValueError: If scale <= 0
    """
    if scale <= 0:
        raise ValueError(f"discrete Laplace scale must be positive, got {scale}")
    success = -math.expm1(-1 / scale)
    first = rng.generator.geometric(success, size)
    second = rng.generator.geometric(success, size)
    if size is None:
        return int(first) - int(second)
    return first.astype(np.int64) - second.astype(np.int64)


def zero_probability(scale: float) -> float:
    """Pr[k = 0] = (e^(1/scale) - 1) / (e^(1/scale) + 1)."""
    if scale <= 0:
        raise ValueError(f"discrete Laplace scale must be positive, got {scale}")
    return math.tanh(1 / (2 * scale))


def randomized_response(bits: np.ndarray, q: float, rng: RandomSource) -> np.ndarray:
    """
    Flip every bit independently with probability q.

    Raises:
        ValueError: If q is outside [0, 1/2)
    """
    if not 0 <= q < 0.5:
        raise ValueError(f"flip probability must lie in [0, 1/2), got {q}")
    bits = np.asarray(bits, dtype=np.uint8)
    if q == 0:
        return bits.copy()
    return bits ^ rng.bernoulli(q, bits.shape)


def response_ratio(q: float) -> float:
    """Largest ratio (1-q)/q between output probabilities of neighboring bits."""
    if not 0 < q < 0.5:
        raise ValueError(f"randomized response needs 0 < q < 1/2, got {q}")
    return (1 - q) / q
