"""
Failure probabilities of codecs over the binary symmetric channel.
"""
import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, List, Optional

import numpy as np
from scipy.stats import binom

from core.bitcore import BitString, NoiseModel, RandomSource
from core.trial_runner import TrialRunner
from codes.base import BudgetExceededError, Codec
from linear.codec import LinearCodec, exact_distance

ENUMERATION_BITS_LIMIT = 20
ENUMERATION_WORK_LIMIT = 1 << 26
MC_MESSAGE_LIMIT = 16
DISTANCE_PAIR_LIMIT = 1 << 22


def min_distance(code: Codec) -> int:
    """
    Exact minimum distance: minimum nonzero weight for linear codes,
    otherwise the minimum over all codeword pairs.

    Raises:
        BudgetExceededError: If there are too many codewords to compare
    """
    if isinstance(code, LinearCodec):
        return exact_distance(code)
    if code.m * (code.m - 1) // 2 > DISTANCE_PAIR_LIMIT:
        raise BudgetExceededError(
            f"pairwise distance over {code.m} codewords is over budget; "
            f"use the declared distance {code.distance}"
        )
    words = [code.encode(v).value for v in range(code.m)]
    return min((a ^ b).bit_count() for a, b in combinations(words, 2))


def exact_failure_prob(code: Codec, p: float) -> float:
    """
    Worst-case probability over messages that decoding a noisy codeword fails.

    Every error pattern is enumerated; failing patterns are counted per
    weight w and the weights' masses p^w (1-p)^(d-w) are summed with
    math.fsum in increasing w.

    Args:
        code: Codec with d <= 20
        p: Flip probability in [0, 1/2)

    Returns:
        max over v of Pr[decode(encode(v) xor e) != v]

    Raises:
        BudgetExceededError: If the enumeration would be too large
    """
    NoiseModel(p)
    d = code.d
    if d > ENUMERATION_BITS_LIMIT or code.m * (1 << d) > ENUMERATION_WORK_LIMIT:
        raise BudgetExceededError(
            f"exact failure probability enumerates m * 2^d = {code.m} * 2^{d} patterns, "
            f"over budget; use mc_failure_prob instead"
        )
    if p == 0:
        return 0.0
    masses = [p ** w * (1 - p) ** (d - w) for w in range(d + 1)]
    worst = 0.0
    for v in range(code.m):
        word = code.encode(v).value
        failures = [0] * (d + 1)
        for error in range(1 << d):
            if code.decode(BitString(d, word ^ error)) != v:
                failures[error.bit_count()] += 1
        worst = max(worst, math.fsum(count * mass for count, mass in zip(failures, masses)))
    return worst


@dataclass(frozen=True)
class FailureEstimate:
    """Monte Carlo failure probability of the worst sampled message."""

    probability: float
    stderr: float
    message: int
    trials: int


def _message_grid(code: Codec, limit: int = MC_MESSAGE_LIMIT) -> List[int]:
    if code.m <= limit:
        return list(range(code.m))
    return sorted({int(v) for v in np.linspace(0, code.m - 1, limit)})


def mc_failure_prob(code: Codec, p: float, trials: int, rng: RandomSource,
                    messages: Optional[Iterable[int]] = None,
                    runner: Optional[TrialRunner] = None) -> FailureEstimate:
    """
    Sampled failure probability, maximised over a message grid.

    Args:
        code: Codec under test
        p: Flip probability in [0, 1/2)
        trials: Trials per message
        rng: Randomness; message v draws from rng.split("message", v)
        messages: Messages to try, all of them (or an even grid of 16) when None
        runner: Trial runner, single-threaded when None

    Returns:
        FailureEstimate with the binomial standard error
    """
    noise = NoiseModel(p)
    runner = runner or TrialRunner()
    grid = list(messages) if messages is not None else _message_grid(code)

    def failures_for(v: int):
        word = code.encode(v)

        def chunk(chunk_rng: RandomSource, size: int) -> int:
            if noise.p == 0:
                return 0
            errors = chunk_rng.bernoulli(noise.p, (size, code.d))
            failed = 0
            for row in errors:
                received = BitString(code.d, word.value ^ BitString.from_array(row).value)
                failed += code.decode(received) != v
            return failed

        return sum(runner.run(trials, chunk, rng.split('message', v), desc=f"message {v}"))

    worst_v = grid[0]
    worst = -1
    for v in grid:
        failed = failures_for(v)
        if failed > worst:
            worst = failed
            worst_v = v
    rate = worst / trials
    return FailureEstimate(probability=rate, stderr=math.sqrt(rate * (1 - rate) / trials),
                           message=worst_v, trials=trials)


def distance_lower_bound(distance: int, p: float) -> float:
    """
    Failure probability every decoder of a distance-D code must reach.

    Two codewords at distance D cannot both be decoded reliably: the
    result is Pr[Bin(D, p) > D/2] plus half of Pr[Bin(D, p) = D/2].

    Raises:
        ValueError: If distance < 1 or p is outside [0, 1/2)
    """
    NoiseModel(p)
    if distance < 1:
        raise ValueError(f"distance must be at least 1, got {distance}")
    if p == 0:
        return 0.0
    tail = float(binom.sf(distance // 2, distance, p))
    if distance % 2 == 0:
        tail += 0.5 * float(binom.pmf(distance // 2, distance, p))
    return tail
