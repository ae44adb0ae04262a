"""
Linear codes over GF(2) with exhaustive and syndrome-table decoding.
"""
from itertools import combinations
from typing import Dict, List, Optional

import numpy as np

from core.bitcore import BitString
from codes.base import BudgetExceededError, Codec, CodecParams
from . import gf2
from .matrix import GeneratorMatrix

ML_MESSAGE_BITS_LIMIT = 16
SYNDROME_REDUNDANCY_LIMIT = 20


class LinearCodec(Codec):
    """
    Code with C(v) = B(v)^T G: the XOR of the rows selected by the binary
    digits of v, row 1 for the least significant bit.
    """

    kind = 'linear'
    DECODERS = ('ml', 'syndrome')

    def __init__(self, generator: GeneratorMatrix, decoder: str = 'ml',
                 distance: Optional[int] = None):
        """
        Args:
            generator: Generator matrix
            decoder: 'ml' (exhaustive, n <= 16) or 'syndrome' (coset leaders, d - n <= 20)
            distance: Declared distance; computed exactly when omitted

        Raises:
            ValueError: On an unknown decoder
            BudgetExceededError: If the decoder's budget does not fit the code
        """
        super().__init__()
        if decoder not in self.DECODERS:
            raise ValueError(f"unknown linear decoder {decoder!r}, expected one of {self.DECODERS}")
        self.generator = generator
        self.decoder = decoder
        if decoder == 'ml' and generator.n > ML_MESSAGE_BITS_LIMIT:
            raise BudgetExceededError(
                f"exhaustive ML decoding supports n <= {ML_MESSAGE_BITS_LIMIT} message bits, "
                f"got {generator.n}; select the 'syndrome' or bit-flip decoder"
            )
        if decoder == 'syndrome' and generator.d - generator.n > SYNDROME_REDUNDANCY_LIMIT:
            raise BudgetExceededError(
                f"syndrome tables support d - n <= {SYNDROME_REDUNDANCY_LIMIT}, "
                f"got {generator.d - generator.n}; select the 'ml' or bit-flip decoder"
            )
        self._codewords: Optional[List[int]] = None
        self._syndrome_table: Optional[Dict[int, int]] = None
        self._parity_rows: Optional[List[int]] = None
        self._recovery = None
        if distance is None:
            distance = exact_distance(self)
        self._params = CodecParams(m=1 << generator.n, d=generator.d, distance=distance)

    @property
    def params(self) -> CodecParams:
        return self._params

    @property
    def n(self) -> int:
        return self.generator.n

    def encode(self, v: int) -> BitString:
        """
        Raises:
            ValueError: If v is outside 0..2^n - 1
        """
        if not 0 <= v < (1 << self.generator.n):
            raise ValueError(f"message {v} outside 0..{(1 << self.generator.n) - 1}")
        value = 0
        for k, row in enumerate(self.generator.row_values):
            if (v >> k) & 1:
                value ^= row
        return BitString(self.generator.d, value)

    def codewords(self) -> List[int]:
        """All codewords as packed ints, indexed by message."""
        if self.generator.n > ML_MESSAGE_BITS_LIMIT:
            raise BudgetExceededError(
                f"codeword enumeration supports n <= {ML_MESSAGE_BITS_LIMIT}, got {self.generator.n}"
            )
        if self._codewords is None:
            words = [0]
            for row in self.generator.row_values:
                words = words + [word ^ row for word in words]
            self._codewords = words
        return self._codewords

    def decode(self, c: BitString) -> int:
        self._check_word(c)
        if self.decoder == 'syndrome':
            return self._syndrome_decode(c)
        return self._ml_decode(c)

    def _ml_decode(self, c: BitString) -> int:
        word = c.value
        best_v = 0
        best = None
        for v, codeword in enumerate(self.codewords()):
            dist = (codeword ^ word).bit_count()
            if best is None or dist < best:
                best = dist
                best_v = v
        return best_v

    def _syndrome(self, word: int) -> int:
        syndrome = 0
        for row in self._parity_rows:
            syndrome = (syndrome << 1) | ((row & word).bit_count() & 1)
        return syndrome

    def _build_syndrome_table(self):
        d = self.generator.d
        parity = gf2.parity_from_generator(self.generator.rows)
        self._parity_rows = [BitString.from_array(row).value for row in parity]
        needed = 1 << len(self._parity_rows)
        table = {}
        for weight in range(d + 1):
            for positions in combinations(range(d), weight):
                error = 0
                for pos in positions:
                    error |= 1 << (d - 1 - pos)
                table.setdefault(self._syndrome(error), error)
            if len(table) == needed:
                break
        self._syndrome_table = table
        self.logger.debug(f"Syndrome table for {self!r}: {len(table)} coset leaders")

    def _syndrome_decode(self, c: BitString) -> int:
        if self._syndrome_table is None:
            self._build_syndrome_table()
        leader = self._syndrome_table[self._syndrome(c.value)]
        return self.message_of(BitString(len(c), c.value ^ leader))

    def message_of(self, codeword: BitString) -> int:
        """
        Recover the message of an exact codeword by solving on the pivot
        columns of the generator.
        """
        if self._recovery is None:
            _, pivots = gf2.rref(self.generator.rows)
            square = self.generator.rows[:, pivots]
            self._recovery = (pivots, gf2.inverse(square))
        pivots, inverse = self._recovery
        bits = codeword.to_array()[pivots].astype(np.uint8)
        message_bits = (bits @ inverse) % 2
        return sum(int(bit) << k for k, bit in enumerate(message_bits))

    def describe(self) -> dict:
        return {'kind': self.kind, 'decoder': self.decoder,
                'rows': self.generator.to_strings()}


def linear_encode(code: LinearCodec, v: int) -> BitString:
    return code.encode(v)


def ml_decode(code: LinearCodec, c: BitString) -> int:
    """
    Smallest message whose codeword is Hamming-closest to c.

    Raises:
        BudgetExceededError: If n exceeds the exhaustive budget
    """
    code._check_word(c)
    return code._ml_decode(c)


def exact_distance(code: LinearCodec) -> int:
    """
    Minimum weight over nonzero codewords.

    Raises:
        BudgetExceededError: If n exceeds the exhaustive budget
    """
    weights = [word.bit_count() for word in code.codewords()[1:]]
    return min(weights)
