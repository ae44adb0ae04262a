"""
Differentially private histogram: small counts are scaled, Gray-encoded and
scattered into a randomized bit table; large counts are released directly
with discrete Laplace noise.
"""
import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Tuple

import numpy as np

from core.bitcore import BitString, RandomSource
from codes.base import Codec
from codes.gray import GrayCodec
from linear.codec import LinearCodec
from linear.matrix import GeneratorMatrix, read_generator
from .hashing import HashFamily
from .noise import discrete_laplace, randomized_response
from .params import HistParams

logger = logging.getLogger('ecgray')

PAIR_TRIPLE_ROWS = ('000111', '111000')
# element id, then a signed 64-bit noisy count
HEAVY_ENTRY_EXTRA_BITS = 64


def sketch_codec(inner_matrix: Optional[str] = None) -> GrayCodec:
    """
    Gray code used for the table columns, over a small linear inner code so
    that value 0 encodes to all zeros.

    Args:
        inner_matrix: Generator matrix file, the pair-triple code when None
    """
    if inner_matrix:
        generator = read_generator(inner_matrix)
    else:
        generator = GeneratorMatrix.from_strings(PAIR_TRIPLE_ROWS)
    return GrayCodec(LinearCodec(generator))


def _as_counts(data) -> Counter:
    if isinstance(data, Mapping):
        return Counter({int(k): int(v) for k, v in data.items() if int(v) > 0})
    return Counter(int(x) for x in data)


def _check_data(counts: Counter, params: HistParams):
    for element, count in counts.items():
        if not 0 <= element < params.u:
            raise ValueError(f"element {element} outside universe 0..{params.u - 1}")
        if count < 0:
            raise ValueError(f"negative count {count} for element {element}")
    total = sum(counts.values())
    if total > params.n:
        raise ValueError(f"dataset has {total} occurrences, more than n = {params.n}")


class RoundingNoise:
    """Per-element uniform offsets for stochastic rounding, fixed by a seed."""

    def __init__(self, rng: RandomSource):
        self.rng = rng
        self._cache: Dict[int, float] = {}

    def offset(self, element: int) -> float:
        if element not in self._cache:
            self._cache[element] = float(self.rng.split('element', element).uniform())
        return self._cache[element]


def scaled_count(count: int, params: HistParams, rounding: RoundingNoise, element: int) -> int:
    """y = min(ell, floor(gamma * x + U))."""
    return min(params.ell, math.floor(params.gamma * count + rounding.offset(element)))


@dataclass
class Projection:
    """Pre-noise s x d' table and the hash family that filled it."""

    table: np.ndarray
    hashes: HashFamily


def project(data, params: HistParams, hashes: HashFamily, codec: Codec,
            rounding: RoundingNoise) -> Projection:
    """
    OR the Gray encoding of every element's scaled count into the table:
    bit b of encode(y_i) lands at row h_b(i) of column b.

    Raises:
        ValueError: On elements outside the universe or too many occurrences
    """
    counts = _as_counts(data)
    _check_data(counts, params)
    if hashes.columns != codec.d:
        raise ValueError(f"hash family has {hashes.columns} columns, codec needs {codec.d}")
    table = np.zeros((hashes.width, codec.d), dtype=np.uint8)
    columns = np.arange(codec.d)
    for element in sorted(counts):
        y = scaled_count(counts[element], params, rounding, element)
        if y == 0:
            continue
        bits = codec.encode(y).to_array()
        rows = np.asarray(hashes.rows(element))
        table[rows[bits == 1], columns[bits == 1]] = 1
    return Projection(table=table, hashes=hashes)


def randomize(projection: Projection, q: float, rng: RandomSource) -> np.ndarray:
    """Noisy table: every bit of the projection flipped with probability q."""
    return randomized_response(projection.table, q, rng)


def neighbor_sensitivity(data_a, data_b, params: HistParams, hashes: HashFamily,
                         codec: Codec, rounding: RoundingNoise) -> int:
    """Number of table bits that differ between the projections of two datasets."""
    table_a = project(data_a, params, hashes, codec, rounding).table
    table_b = project(data_b, params, hashes, codec, rounding).table
    return int(np.count_nonzero(table_a != table_b))


@dataclass
class PrivateHistogram:
    """Sealed sketch: noisy table, public hash seeds and the heavy store."""

    params: HistParams
    codec: Codec
    hashes: HashFamily
    noisy_table: np.ndarray
    heavy: Dict[int, int] = field(default_factory=dict)
    build_seed: int = 0

    def query_bits(self, element: int) -> List[Tuple[int, int]]:
        """The (row, column) cells one light-path estimate reads."""
        return list(zip(self.hashes.rows(element), range(self.codec.d)))

    def read_word(self, element: int) -> BitString:
        return BitString.from_bits(self.noisy_table[row, col] for row, col in self.query_bits(element))

    def estimate(self, element: int) -> float:
        """
        Estimated count of an element.

        Raises:
            ValueError: If element is outside the universe
        """
        if not 0 <= element < self.params.u:
            raise ValueError(f"element {element} outside universe 0..{self.params.u - 1}")
        noisy = self.heavy.get(element)
        if noisy is not None and noisy >= self.params.threshold:
            return float(noisy)
        y = min(self.codec.decode(self.read_word(element)), self.params.ell)
        return y / self.params.gamma

    def size_bits(self) -> int:
        """Table bits plus one (element, count) pair per heavy entry."""
        element_bits = max(1, math.ceil(math.log2(self.params.u)))
        return (self.noisy_table.size
                + len(self.heavy) * (element_bits + HEAVY_ENTRY_EXTRA_BITS))

    def to_json(self) -> dict:
        """Debug view; the table rows are '0'/'1' strings."""
        p = self.params
        return {
            'params': {'u': p.u, 'n': p.n, 'eps': p.eps, 'ell': p.ell, 'dprime': p.dprime,
                       's': p.s, 'q': p.q, 'gamma': p.gamma, 'debug': p.debug,
                       'threshold': p.threshold},
            'codec': self.codec.describe(),
            'build_seed': self.build_seed,
            'hash_seeds': [list(pair) for pair in self.hashes.seeds()],
            'heavy': {str(k): v for k, v in sorted(self.heavy.items())},
            'table': [''.join(str(int(bit)) for bit in row) for row in self.noisy_table],
        }

    def save(self, path: str):
        from .serialization import save
        save(self, path)

    @classmethod
    def load(cls, path: str) -> 'PrivateHistogram':
        from .serialization import load
        return load(path)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PrivateHistogram):
            return NotImplemented
        return (self.params == other.params
                and self.codec.describe() == other.codec.describe()
                and self.hashes == other.hashes
                and self.heavy == other.heavy
                and self.build_seed == other.build_seed
                and np.array_equal(self.noisy_table, other.noisy_table))


def build(data, params: HistParams, seed: int, codec: Optional[Codec] = None,
          hashes: Optional[HashFamily] = None) -> PrivateHistogram:
    """
    Build a private histogram.

    Every element's count gets discrete Laplace noise of scale 1/eps; those
    whose noisy count reaches T = ell/gamma go to the heavy store, the rest
    are projected into the table, which is then randomized.

    Args:
        data: Iterable of elements or a mapping element -> count
        params: Sketch parameters
        seed: Build seed
        codec: Column code, the pair-triple Gray code when None
        hashes: Hash family, sampled from the seed when None

    Returns:
        PrivateHistogram

    Raises:
        ValueError: If the data or the codec does not fit the parameters
    """
    codec = codec or sketch_codec()
    if codec.d != params.dprime:
        raise ValueError(f"codec block length {codec.d} != dprime {params.dprime}")
    if codec.m <= params.ell:
        raise ValueError(f"codec encodes 0..{codec.m - 1}, needs 0..{params.ell}")
    if codec.encode(0).weight() != 0:
        raise ValueError("codec must encode 0 as the all-zero word")

    counts = _as_counts(data)
    _check_data(counts, params)
    rng = RandomSource(seed)
    hashes = hashes or HashFamily.sample(rng.split('hash'), codec.d, params.s)
    if hashes.width != params.s:
        raise ValueError(f"hash width {hashes.width} != s {params.s}")

    heavy = {}
    light = Counter()
    for element in sorted(counts):
        noisy = counts[element] + discrete_laplace(rng.split('heavy', element), params.laplace_scale)
        if noisy >= params.threshold:
            heavy[element] = noisy
        else:
            light[element] = counts[element]

    projection = project(light, params, hashes, codec, RoundingNoise(rng.split('round')))
    noisy_table = randomize(projection, params.q, rng.split('response'))
    logger.info(f"Built histogram: {len(light)} light and {len(heavy)} heavy elements, "
                f"table {params.s}x{codec.d}")
    return PrivateHistogram(params=params, codec=codec, hashes=hashes,
                            noisy_table=noisy_table, heavy=heavy, build_seed=seed)
