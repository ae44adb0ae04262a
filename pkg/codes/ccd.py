"""
Constant consecutive distance code K(v) = C(v) L(v) C(v) L(v).
"""
from collections import Counter
from typing import List, Tuple

from core.bitcore import BitString, concat
from .base import Codec, CodecParams, TieBreakPolicy, DETERMINISTIC
from .complement import ComplementCodec


class ConstantDistanceCodec(Codec):
    """
    Four-part concatenation whose consecutive codewords differ in exactly
    2(d + D) bits.
    """

    kind = 'ccd'

    def __init__(self, inner: Codec, ties: TieBreakPolicy = DETERMINISTIC):
        super().__init__()
        self.inner = inner
        self.complement = ComplementCodec(inner, ties)
        p = inner.params
        # each of the four components contributes at least D
        self._params = CodecParams(m=p.m, d=4 * p.d + 2 * p.distance, distance=4 * p.distance)
        c_len = p.d
        l_len = p.d + p.distance
        # (start offset, length, is plain inner copy)
        self._parts = (
            (0, c_len, True),
            (c_len, l_len, False),
            (c_len + l_len, c_len, True),
            (2 * c_len + l_len, l_len, False),
        )

    @property
    def params(self) -> CodecParams:
        return self._params

    @property
    def step_distance(self) -> int:
        """g = 2(d + D), the distance between consecutive codewords."""
        return 2 * (self.inner.d + self.inner.distance)

    def encode(self, v: int) -> BitString:
        self._check_message(v)
        c = self.inner.encode(v)
        l = self.complement.encode(v)
        return concat(c, l, c, l)

    def split(self, c: BitString) -> List[BitString]:
        """Cut a block into its C, L, C, L components."""
        self._check_word(c)
        total = len(c)
        parts = []
        for start, length, _ in self._parts:
            shift = total - start - length
            parts.append(BitString(length, (c.value >> shift) & ((1 << length) - 1)))
        return parts

    def component_decodes(self, c: BitString) -> List[Tuple[int, bool]]:
        """Decoded value of each component, with a flag marking plain C copies."""
        decoded = []
        for part, (_, _, plain) in zip(self.split(c), self._parts):
            codec = self.inner if plain else self.complement
            decoded.append((codec.decode(part), plain))
        return decoded

    def decode(self, c: BitString) -> int:
        """
        Most frequent component decode.

        Ties prefer the value decoded by more of the plain C copies, then the
        smaller value.
        """
        decoded = self.component_decodes(c)
        votes = Counter(value for value, _ in decoded)
        plain_votes = Counter(value for value, plain in decoded if plain)
        return min(votes, key=lambda value: (-votes[value], -plain_votes[value], value))

    def describe(self) -> dict:
        return {'kind': self.kind, 'inner': self.inner.describe()}


def ccd_encode(inner: Codec, v: int) -> BitString:
    return ConstantDistanceCodec(inner).encode(v)


def ccd_decode(inner: Codec, c: BitString) -> int:
    return ConstantDistanceCodec(inner).decode(c)
