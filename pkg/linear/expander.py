"""
Sparse-graph linear code with sum-product and bit-flipping decoders.

The parity checks come from a random regular bipartite graph (Gallager's
banded construction). Decoding radius is declared from the configured alpha
and checked empirically; expansion of the sampled graph is not verified.
"""
import logging
import math
from dataclasses import dataclass
from typing import List, Optional

import numpy as np
from scipy import sparse

from core.bitcore import BitString, RandomSource
from . import gf2
from .codec import LinearCodec
from .matrix import GeneratorMatrix, write_matrix

logger = logging.getLogger('ecgray')

EXPANDER_DECODERS = ('sumproduct', 'bitflip')
SUMPRODUCT_ITERATIONS = 100
_CLIP = 1 - 1e-12
_TINY = 1e-12


@dataclass(frozen=True)
class ExpanderConfig:
    """
    Shape of the sampled parity-check graph.

    Attributes:
        d: Block length, a multiple of check_degree
        variable_degree: Checks per bit
        check_degree: Bits per check
        alpha: Target decoding radius as a fraction of d, below 1/4; the
            sum-product decoder assumes flip probability alpha/2
        graph_seed: Seed of the graph sampler
        decoder: 'sumproduct' or 'bitflip'
        max_iters: Iteration cap; 100 rounds of message passing or 10*d
            flips when None
        rank_slack: Dependent checks tolerated beyond which the graph is resampled
        max_retries: Resampling attempts before giving up
    """

    d: int = 1024
    variable_degree: int = 3
    check_degree: int = 4
    alpha: float = 0.2
    graph_seed: int = 0
    decoder: str = 'sumproduct'
    max_iters: Optional[int] = None
    rank_slack: int = 8
    max_retries: int = 5

    def __post_init__(self):
        if self.variable_degree < 2:
            raise ValueError(f"variable_degree must be at least 2, got {self.variable_degree}")
        if self.check_degree <= self.variable_degree:
            raise ValueError(
                f"check_degree ({self.check_degree}) must exceed variable_degree "
                f"({self.variable_degree}) to leave message bits"
            )
        if self.d < 1 or self.d % self.check_degree:
            raise ValueError(f"d ({self.d}) must be a positive multiple of check_degree ({self.check_degree})")
        if not 0 < self.alpha < 0.25:
            raise ValueError(f"alpha must lie in (0, 1/4), got {self.alpha}")
        if self.alpha * self.d < 1:
            raise ValueError(f"alpha * d must be at least 1, got {self.alpha * self.d}")
        if self.decoder not in EXPANDER_DECODERS:
            raise ValueError(f"unknown expander decoder {self.decoder!r}, expected one of {EXPANDER_DECODERS}")
        if self.max_iters is not None and self.max_iters < 1:
            raise ValueError(f"max_iters must be positive, got {self.max_iters}")
        if self.rank_slack < 0 or self.max_retries < 0:
            raise ValueError("rank_slack and max_retries must be non-negative")

    @property
    def check_count(self) -> int:
        return self.variable_degree * self.d // self.check_degree

    @property
    def iteration_cap(self) -> int:
        return self.cap_for(self.decoder)

    def cap_for(self, decoder: str) -> int:
        if self.max_iters is not None:
            return self.max_iters
        return 10 * self.d if decoder == 'bitflip' else SUMPRODUCT_ITERATIONS

    @property
    def channel_p(self) -> float:
        return self.alpha / 2

    @property
    def declared_distance(self) -> int:
        return max(1, int(2 * self.alpha * self.d))


@dataclass(frozen=True)
class DecodeResult:
    """Decoded message plus whether every parity check ended satisfied."""

    message: int
    converged: bool
    iterations: int


def sample_parity(config: ExpanderConfig, rng: RandomSource) -> np.ndarray:
    """
    Stack `variable_degree` bands of d/check_degree checks each.

    Band 0 covers consecutive runs of check_degree bits; later bands apply
    a random column permutation, so every bit sits in one check per band.
    """
    band_rows = config.d // config.check_degree
    band = np.zeros((band_rows, config.d), dtype=np.uint8)
    for row in range(band_rows):
        band[row, row * config.check_degree:(row + 1) * config.check_degree] = 1
    bands = [band]
    for _ in range(1, config.variable_degree):
        bands.append(band[:, rng.generator.permutation(config.d)])
    return np.vstack(bands)


class ExpanderCodec(LinearCodec):
    """Linear code defined by sparse parity checks, decoded by message passing."""

    kind = 'expander'
    DECODERS = EXPANDER_DECODERS

    def __init__(self, config: ExpanderConfig, parity: np.ndarray,
                 generator: GeneratorMatrix, free: List[int]):
        super().__init__(generator, decoder=config.decoder, distance=config.declared_distance)
        self.config = config
        self.parity = parity
        self.free = np.asarray(free, dtype=np.int64)
        self.checks = sparse.csr_matrix(parity, dtype=np.int64)
        edges = self.checks.tocoo()
        self.edge_checks = edges.row.astype(np.int64)
        self.edge_bits = edges.col.astype(np.int64)
        self.check_starts = self.checks.indptr[:-1]
        by_bit = self.checks.tocsc()
        self.degrees = np.diff(by_bit.indptr)
        self.bit_checks = [by_bit.indices[by_bit.indptr[j]:by_bit.indptr[j + 1]]
                           for j in range(config.d)]
        self.check_bits = [self.checks.indices[self.checks.indptr[i]:self.checks.indptr[i + 1]]
                           for i in range(parity.shape[0])]

    def message_of(self, codeword: BitString) -> int:
        return self.message_of_array(codeword.to_array())

    def message_of_array(self, bits: np.ndarray) -> int:
        """Message bit k is the codeword bit at the k-th free column."""
        selected = bits[self.free]
        return sum(int(bit) << k for k, bit in enumerate(selected))

    def decode(self, c: BitString) -> int:
        return decode_word(self, c).message

    def write_parity(self, path: str):
        """Export the parity checks in the generator text format."""
        write_matrix(self.parity, path)

    def describe(self) -> dict:
        cfg = self.config
        return {'kind': self.kind, 'd': cfg.d, 'variable_degree': cfg.variable_degree,
                'check_degree': cfg.check_degree, 'alpha': cfg.alpha,
                'graph_seed': cfg.graph_seed, 'decoder': cfg.decoder}

    def __repr__(self) -> str:
        return (f"ExpanderCodec(d={self.config.d}, n={self.n}, "
                f"degrees=({self.config.variable_degree},{self.config.check_degree}))")


def expander_build(config: ExpanderConfig) -> ExpanderCodec:
    """
    Sample parity checks from config.graph_seed and derive a systematic generator.

    Raises:
        RuntimeError: If every attempt leaves more than rank_slack dependent checks
    """
    base = RandomSource(config.graph_seed)
    for attempt in range(config.max_retries + 1):
        rng = base if attempt == 0 else base.split('retry', attempt)
        parity = sample_parity(config, rng)
        basis, free, rank = gf2.systematic_generator(parity)
        deficiency = config.check_count - rank
        if deficiency <= config.rank_slack and len(free) > 0:
            code = ExpanderCodec(config, parity, GeneratorMatrix(basis), free)
            logger.debug(f"Sampled {code!r} on attempt {attempt} ({deficiency} dependent checks)")
            return code
        logger.warning(
            f"Parity graph attempt {attempt} has {deficiency} dependent checks "
            f"(allowed {config.rank_slack}), resampling"
        )
    raise RuntimeError(
        f"could not sample a parity graph with at most {config.rank_slack} dependent checks "
        f"in {config.max_retries + 1} attempts"
    )


def bitflip_decode(code: ExpanderCodec, c: BitString,
                   max_iters: Optional[int] = None) -> DecodeResult:
    """
    Flip the bit with the largest drop in unsatisfied checks (lowest index
    among equals) until all checks hold or no flip helps. Stops at the cap.

    Args:
        code: Expander code
        c: Received word
        max_iters: Iteration cap, the config's cap when None

    Returns:
        DecodeResult; converged is False on a best-effort answer
    """
    code._check_word(c)
    cap = code.config.cap_for('bitflip') if max_iters is None else max_iters
    word = c.to_array().astype(np.int64)
    syndrome = (code.checks @ word) % 2
    unsatisfied = code.checks.T @ syndrome
    iterations = 0
    while iterations < cap and syndrome.any():
        gains = 2 * unsatisfied - code.degrees
        j = int(np.argmax(gains))
        if gains[j] <= 0:
            break
        word[j] ^= 1
        for check in code.bit_checks[j]:
            syndrome[check] ^= 1
            unsatisfied[code.check_bits[check]] += 1 if syndrome[check] else -1
        iterations += 1
    converged = not syndrome.any()
    if not converged:
        logger.debug(f"Bit flipping stopped after {iterations} iterations "
                     f"with {int(syndrome.sum())} unsatisfied checks")
    return DecodeResult(message=code.message_of_array(word), converged=converged,
                         iterations=iterations)


def sumproduct_decode(code: ExpanderCodec, c: BitString, max_iters: Optional[int] = None,
                      channel_p: Optional[float] = None) -> DecodeResult:
    """
    Belief propagation over the check graph with log-likelihood messages.

    Each round sends every bit's extrinsic belief to its checks, combines
    them with the tanh rule and takes the hard decision of the totals.
    Stops as soon as the hard decision satisfies every check.

    Args:
        code: Expander code
        c: Received word
        max_iters: Round cap, the config's cap when None
        channel_p: Flip probability behind the channel prior, alpha/2 when None

    Returns:
        DecodeResult; converged is False on a best-effort answer

    Raises:
        ValueError: If channel_p is outside (0, 1/2)
    """
    code._check_word(c)
    p = code.config.channel_p if channel_p is None else channel_p
    if not 0 < p < 0.5:
        raise ValueError(f"channel_p must lie in (0, 1/2), got {p}")
    cap = code.config.cap_for('sumproduct') if max_iters is None else max_iters
    received = c.to_array().astype(np.int64)
    prior = np.where(received == 1, -1.0, 1.0) * math.log((1 - p) / p)
    checks, bits, starts = code.edge_checks, code.edge_bits, code.check_starts

    word = received
    syndrome = (code.checks @ word) % 2
    to_check = prior[bits]
    iterations = 0
    while iterations < cap and syndrome.any():
        t = np.tanh(to_check / 2)
        log_magnitude = np.log(np.maximum(np.abs(t), _TINY))
        negative = (t < 0).astype(np.int64)
        others = np.exp(np.add.reduceat(log_magnitude, starts)[checks] - log_magnitude)
        flips = np.add.reduceat(negative, starts)[checks] - negative
        product = np.where(flips % 2 == 1, -others, others)
        to_bit = 2 * np.arctanh(np.clip(product, -_CLIP, _CLIP))
        belief = prior + np.bincount(bits, weights=to_bit, minlength=code.d)
        to_check = belief[bits] - to_bit
        word = (belief < 0).astype(np.int64)
        syndrome = (code.checks @ word) % 2
        iterations += 1
    converged = not syndrome.any()
    if not converged:
        logger.debug(f"Sum-product stopped after {iterations} rounds "
                     f"with {int(syndrome.sum())} unsatisfied checks")
    return DecodeResult(message=code.message_of_array(word), converged=converged,
                        iterations=iterations)


def decode_word(code: ExpanderCodec, c: BitString) -> DecodeResult:
    """Run the decoder the code was configured with."""
    if code.decoder == 'bitflip':
        return bitflip_decode(code, c)
    return sumproduct_decode(code, c)
