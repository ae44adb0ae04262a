"""
Seeded Monte Carlo experiments: Gray-code tail concentration, majority
flips among k bits and expander decoding.
"""
import logging
import math
from dataclasses import dataclass
from functools import partial
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from core.bitcore import BitString, NoiseModel, RandomSource
from core.trial_runner import TrialRunner
from codes.base import Codec
from codes.gray import GrayCodec
from linear.expander import ExpanderCodec, decode_word
from linear.lgray import LinearGrayCodec
from .bounds import TailBoundParams, majority_flip_bound, linear_gray_tail_bound, gray_tail_bound
from .failure import exact_failure_prob
from .report import ExperimentReport, TailRow

logger = logging.getLogger('ecgray')

STDERR_MULTIPLIER = 3
GRID_BLOCKS = 16

BoundFn = Callable[[float], float]


def _block_starts(count: int) -> List[int]:
    if count <= GRID_BLOCKS:
        return list(range(count))
    return sorted({int(q) for q in np.linspace(0, count - 1, GRID_BLOCKS)})


def adversarial_grid(codec: Codec) -> List[int]:
    """
    Values tried for the worst case: block starts plus offsets 0, 1, g/2
    and g-1 for Gray codes, an even spread of messages otherwise.
    """
    points = set()
    if isinstance(codec, GrayCodec):
        g = codec.layout.g
        for q in _block_starts(codec.inner.m - 1):
            points.update(q * g + offset for offset in (0, 1, g // 2, g - 1))
    elif isinstance(codec, LinearGrayCodec):
        layout = codec.layout
        for l in _block_starts(codec.code.m - 1):
            step = layout.step(l)
            points.update(layout.start(l) + offset for offset in (0, 1, step // 2, step - 1))
    else:
        points.update(int(v) for v in np.linspace(0, codec.m - 1, min(codec.m, 4 * GRID_BLOCKS)))
    return sorted(v for v in points if 0 <= v < codec.m)


def default_tail_bound(codec: Codec, p: float) -> Tuple[BoundFn, str]:
    """
    The tail bound matching the codec's construction, using the exact inner
    failure probability.

    Returns:
        (bound function of t, label)
    """
    if isinstance(codec, GrayCodec):
        inner = codec.inner
        params = TailBoundParams(p, inner.d, inner.distance, exact_failure_prob(inner, p))
        return partial(gray_tail_bound, params), 'gray'
    if isinstance(codec, LinearGrayCodec):
        inner = codec.code
        params = TailBoundParams(p, inner.d, inner.distance, exact_failure_prob(inner, p))
        return partial(linear_gray_tail_bound, params), 'linear_gray'
    return (lambda t: 1.0), 'trivial'


def _tail_counts(codec: Codec, noise: NoiseModel, t_values: Sequence[int],
                 values: Callable[[RandomSource, int], np.ndarray]):
    thresholds = np.asarray(t_values, dtype=np.int64)

    def chunk(chunk_rng: RandomSource, size: int) -> np.ndarray:
        vs = values(chunk_rng, size)
        errors = chunk_rng.bernoulli(noise.p, (size, codec.d))
        diffs = np.empty(size, dtype=np.int64)
        for k in range(size):
            v = int(vs[k])
            word = codec.encode(v).value ^ BitString.from_array(errors[k]).value
            diffs[k] = abs(v - codec.decode(BitString(codec.d, word)))
        return (diffs[:, None] >= thresholds[None, :]).sum(axis=0)

    return chunk


def _rate(count: int, trials: int) -> Tuple[float, float]:
    rate = count / trials
    return rate, math.sqrt(rate * (1 - rate) / trials)


def tail_experiment(codec: Codec, p: float, trials: int, t_values: Sequence[int],
                    rng: RandomSource, bound: Optional[BoundFn] = None,
                    runner: Optional[TrialRunner] = None,
                    grid_trials: Optional[int] = None) -> ExperimentReport:
    """
    Measure Pr[|v - decode(encode(v) xor b_p)| >= t] and check it against a bound.

    Uniform v are drawn for `trials` trials. Each value of the adversarial
    grid is then run separately and the worst per-value tail is reported.
    A row passes when both tails stay within the bound plus three standard
    errors.

    Args:
        codec: Gray codec (any codec works with the trivial bound)
        p: Flip probability in [0, 1/2)
        trials: Uniform trials
        t_values: Thresholds t >= 1
        rng: Experiment randomness
        bound: Bound function of t, the construction's default when None
        runner: Trial runner, single-threaded when None
        grid_trials: Trials per grid value, trials / grid size when None

    Returns:
        ExperimentReport
    """
    noise = NoiseModel(p)
    if trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")
    if any(t < 0 for t in t_values):
        raise ValueError(f"thresholds must be non-negative, got {list(t_values)}")
    runner = runner or TrialRunner()
    if bound is None:
        bound, bound_label = default_tail_bound(codec, p)
    else:
        bound_label = 'custom'

    uniform = _tail_counts(codec, noise, t_values,
                           lambda chunk_rng, size: chunk_rng.integers(0, codec.m, size))
    counts = sum(runner.run(trials, uniform, rng.split('uniform'), desc="uniform trials"))

    grid = adversarial_grid(codec)
    per_value = grid_trials or max(1, trials // len(grid))
    worst = np.full(len(t_values), -1, dtype=np.int64)
    for v in grid:
        fixed = _tail_counts(codec, noise, t_values,
                             lambda chunk_rng, size, v=v: np.full(size, v, dtype=np.int64))
        grid_counts = sum(runner.run(per_value, fixed, rng.split('grid', v), desc=f"value {v}"))
        worst = np.maximum(worst, grid_counts)

    rows = []
    for k, t in enumerate(t_values):
        empirical, stderr = _rate(int(counts[k]), trials)
        adversarial, adversarial_stderr = _rate(int(worst[k]), per_value)
        limit = bound(t)
        passed = (empirical <= limit + STDERR_MULTIPLIER * stderr
                  and adversarial <= limit + STDERR_MULTIPLIER * adversarial_stderr)
        rows.append(TailRow(t=int(t), empirical=empirical, stderr=stderr,
                            adversarial=adversarial, adversarial_stderr=adversarial_stderr,
                            bound=limit, passed=passed))
        if not passed:
            logger.warning(f"Tail at t={t} exceeds bound {limit:.6g}: "
                           f"empirical {empirical:.6g}, adversarial {adversarial:.6g}")

    config = {
        'codec': codec.describe(),
        'p': p,
        't_values': [int(t) for t in t_values],
        'bound': bound_label,
        'grid_size': len(grid),
        'grid_trials': per_value,
    }
    return ExperimentReport(config=config, seed=rng.seed, trials=trials, rows=rows)


@dataclass(frozen=True)
class MajorityFlipResult:
    """Frequency of a noisy word landing at least as close to a rival k bits away."""

    k: int
    p: float
    trials: int
    empirical: float
    stderr: float
    bound: float

    @property
    def passed(self) -> bool:
        return self.empirical <= self.bound + STDERR_MULTIPLIER * self.stderr


def majority_flip_experiment(k: int, p: float, trials: int, rng: RandomSource,
                          length: Optional[int] = None,
                          runner: Optional[TrialRunner] = None) -> MajorityFlipResult:
    """
    Draw random c1 and c2 = c1 with k bits inverted, send c1 through the
    channel and count how often the result is no closer to c1 than to c2.

    Args:
        k: Distance between the two words
        p: Flip probability in [0, 1/2)
        trials: Number of trials
        rng: Experiment randomness
        length: Word length, 2k (at least 1) when None
        runner: Trial runner, single-threaded when None
    """
    noise = NoiseModel(p)
    n = length if length is not None else max(1, 2 * k)
    if not 0 <= k <= n:
        raise ValueError(f"k must lie in 0..{n}, got {k}")
    runner = runner or TrialRunner()

    def chunk(chunk_rng: RandomSource, size: int) -> int:
        c1 = chunk_rng.integers(0, 2, (size, n)).astype(np.uint8)
        order = np.argsort(chunk_rng.uniform((size, n)), axis=1)
        mask = np.zeros((size, n), dtype=np.uint8)
        np.put_along_axis(mask, order[:, :k], 1, axis=1)
        c2 = c1 ^ mask
        noisy = c1 ^ chunk_rng.bernoulli(noise.p, (size, n))
        closer = (noisy != c2).sum(axis=1) <= (noisy != c1).sum(axis=1)
        return int(closer.sum())

    hits = sum(runner.run(trials, chunk, rng.split('majority_flip', k), desc="majority flips"))
    empirical, stderr = _rate(hits, trials)
    return MajorityFlipResult(k=k, p=p, trials=trials, empirical=empirical, stderr=stderr,
                           bound=majority_flip_bound(k, p))


@dataclass(frozen=True)
class DecodingResult:
    """Decoding of the zero codeword over the channel with the code's decoder."""

    trials: int
    successes: int
    converged: int
    failure_bound: float

    @property
    def success_rate(self) -> float:
        return self.successes / self.trials

    @property
    def stderr(self) -> float:
        rate = self.success_rate
        return math.sqrt(rate * (1 - rate) / self.trials)


def expander_decoding_experiment(code: ExpanderCodec, p: float, trials: int,
                                 rng: RandomSource,
                                 runner: Optional[TrialRunner] = None) -> DecodingResult:
    """
    Decode noisy copies of the zero codeword and count exact recoveries.

    failure_bound is exp(-alpha d / 6), the rate a true expander with the
    configured radius would guarantee at p = alpha/2.
    """
    noise = NoiseModel(p)
    runner = runner or TrialRunner()
    d = code.d

    def chunk(chunk_rng: RandomSource, size: int) -> np.ndarray:
        errors = chunk_rng.bernoulli(noise.p, (size, d))
        successes = 0
        converged = 0
        for row in errors:
            result = decode_word(code, BitString.from_array(row))
            successes += result.message == 0
            converged += result.converged
        return np.array([successes, converged], dtype=np.int64)

    totals = sum(runner.run(trials, chunk, rng.split('expander'), desc="expander decoding"))
    cfg = code.config
    return DecodingResult(trials=trials, successes=int(totals[0]), converged=int(totals[1]),
                          failure_bound=math.exp(-cfg.alpha * cfg.d / 6))
