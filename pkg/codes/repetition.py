"""
Repetition codes used as small inner codes.
"""
from core.bitcore import BitString
from .base import Codec, CodecParams, TieBreakPolicy, DETERMINISTIC


class BlockRepetitionCodec(Codec):
    """
    Each message bit, most significant first, repeated `reps` times.

    BlockRepetitionCodec(2, 3) is the "pair-triple" code: v = (v1 v0) encodes
    as v1 v1 v1 v0 v0 v0.
    """

    kind = 'blockrep'

    def __init__(self, bits: int, reps: int, ties: TieBreakPolicy = DETERMINISTIC):
        super().__init__()
        if bits < 1 or reps < 1:
            raise ValueError(f"bits and reps must be positive, got {bits}, {reps}")
        self.bits = bits
        self.reps = reps
        self.ties = ties
        self._params = CodecParams(m=1 << bits, d=bits * reps, distance=reps)
        self._block = (1 << reps) - 1

    @property
    def params(self) -> CodecParams:
        return self._params

    def encode(self, v: int) -> BitString:
        self._check_message(v)
        value = 0
        for k in range(self.bits - 1, -1, -1):
            value = (value << self.reps) | (self._block if (v >> k) & 1 else 0)
        return BitString(self._params.d, value)

    def decode(self, c: BitString) -> int:
        self._check_word(c)
        v = 0
        word = c.value
        for k in range(self.bits - 1, -1, -1):
            ones = ((word >> (k * self.reps)) & self._block).bit_count()
            zeros = self.reps - ones
            if ones > zeros:
                bit = 1
            elif zeros > ones:
                bit = 0
            else:
                bit = self.ties.choose([0, 1])
            v = (v << 1) | bit
        return v

    def describe(self) -> dict:
        return {'kind': self.kind, 'bits': self.bits, 'reps': self.reps}


class RepetitionCodec(BlockRepetitionCodec):
    """Single bit repeated d times (m = 2, distance d)."""

    kind = 'repetition'

    def __init__(self, d: int, ties: TieBreakPolicy = DETERMINISTIC):
        super().__init__(bits=1, reps=d, ties=ties)

    def describe(self) -> dict:
        return {'kind': self.kind, 'd': self.reps}


class PairTripleCodec(BlockRepetitionCodec):
    """Two message bits, each repeated three times (m = 4, d = 6, D = 3)."""

    kind = 'pairtriple'

    def __init__(self, ties: TieBreakPolicy = DETERMINISTIC):
        super().__init__(bits=2, reps=3, ties=ties)

    def describe(self) -> dict:
        return {'kind': self.kind}
