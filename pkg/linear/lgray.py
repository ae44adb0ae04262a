"""
Error-correcting Gray code built on a linear code repeated three times.

Block l interpolates between W(l) and W(l+1), where W is the three-fold
repetition of the linear code. Block boundaries sit at 3*cum(l) so that
every block has exactly as many values as W(l) and W(l+1) have differing bits.
"""
from functools import lru_cache
from typing import List, Tuple

from core.bitcore import BitString, concat, diff_positions, hamming, prefix, suffix
from codes.base import Codec, CodecParams, TieBreakPolicy, DETERMINISTIC
from codes.unary import unary_decode
from .codec import LinearCodec
from .counting import count_codewords, find_block

COPIES = 3


class RepeatCodec(Codec):
    """W(v) = C(v) C(v) C(v), decoded by the median of the component decodes."""

    kind = 'repeat3'

    def __init__(self, code: Codec):
        super().__init__()
        self.code = code
        p = code.params
        self._params = CodecParams(m=p.m, d=COPIES * p.d, distance=COPIES * p.distance)

    @property
    def params(self) -> CodecParams:
        return self._params

    def encode(self, v: int) -> BitString:
        word = self.code.encode(v)
        return concat(*([word] * COPIES))

    def component_decodes(self, c: BitString) -> List[int]:
        self._check_word(c)
        d = self.code.d
        mask = (1 << d) - 1
        return [self.code.decode(BitString(d, (c.value >> ((COPIES - 1 - k) * d)) & mask))
                for k in range(COPIES)]

    def decode(self, c: BitString) -> int:
        return sorted(self.component_decodes(c))[COPIES // 2]

    def describe(self) -> dict:
        return {'kind': self.kind, 'inner': self.code.describe()}


def w_encode(code: LinearCodec, v: int) -> BitString:
    return RepeatCodec(code).encode(v)


def w_decode(code: LinearCodec, c: BitString) -> int:
    """
    Median of the three component decodes.

    Raises:
        ValueError: If c is not 3d bits long
    """
    return RepeatCodec(code).decode(c)


class LinearGrayLayout:
    """Cumulative block boundaries and differing-bit tables over W."""

    def __init__(self, code: LinearCodec, cache_size: int = 4096):
        self.code = code
        self.repeat = RepeatCodec(code)
        self.block_len = self.repeat.d
        self.cum = lru_cache(maxsize=cache_size)(self._cum)
        self.codeword = lru_cache(maxsize=cache_size)(self.repeat.encode)
        self._diff_index = lru_cache(maxsize=cache_size)(self._compute_diff_index)
        self.max_value = self.start(code.m - 1)

    def _cum(self, t: int) -> int:
        return count_codewords(t, self.code.generator)

    def start(self, l: int) -> int:
        """First value of block l, 3*cum(l)."""
        return COPIES * self.cum(l)

    def step(self, l: int) -> int:
        """Number of values in block l, the distance between W(l) and W(l+1)."""
        return self.start(l + 1) - self.start(l)

    def _compute_diff_index(self, l: int) -> Tuple[int, ...]:
        return diff_positions(self.codeword(l), self.codeword(l + 1))

    def diff_index(self, l: int) -> Tuple[int, ...]:
        """
        Sorted 1-based positions where W(l) and W(l+1) differ.

        Raises:
            ValueError: If l is outside 0..m-2
        """
        if not 0 <= l < self.code.m - 1:
            raise ValueError(f"block index {l} outside 0..{self.code.m - 2}")
        return self._diff_index(l)

    def __repr__(self) -> str:
        return f"LinearGrayLayout(block_len={self.block_len}, max_value={self.max_value})"


def lgray_encode(layout: LinearGrayLayout, v: int) -> BitString:
    """
    Encode v = 3*cum(l) + r as the first b_r bits of W(l+1) followed by the
    rest of W(l).

    Raises:
        ValueError: If v is outside 0..M-1
    """
    l, r = find_block(layout, v)
    if r == 0:
        return layout.codeword(l)
    split = layout.diff_index(l)[r - 1]
    return concat(prefix(layout.codeword(l + 1), split),
                  suffix(layout.codeword(l), layout.block_len - split))


def _h_vector(layout: LinearGrayLayout, c: BitString, l: int) -> BitString:
    delta = c.value ^ layout.codeword(l).value
    n = layout.block_len
    return BitString.from_bits((delta >> (n - pos)) & 1 for pos in layout.diff_index(l))


def lgray_candidates(layout: LinearGrayLayout, c: BitString,
                     ties: TieBreakPolicy = DETERMINISTIC) -> List[int]:
    if len(c) != layout.block_len:
        raise ValueError(f"word length {len(c)} != block length {layout.block_len}")
    t = layout.repeat.decode(c)
    top = layout.code.m - 1
    candidates = []
    if t >= 1:
        candidates.append(layout.start(t - 1) + unary_decode(_h_vector(layout, c, t - 1), ties))
    if t < top:
        candidates.append(layout.start(t) + unary_decode(_h_vector(layout, c, t), ties))
    return sorted({min(max(v, 0), layout.max_value - 1) for v in candidates})


def lgray_decode(layout: LinearGrayLayout, c: BitString,
                 ties: TieBreakPolicy = DETERMINISTIC) -> int:
    """Closest of the two block candidates; equal distances go to the smaller value."""
    candidates = lgray_candidates(layout, c, ties)
    return min(candidates, key=lambda v: (hamming(c, lgray_encode(layout, v)), v))


class LinearGrayCodec(Codec):
    """Sensitivity-1 Gray code over a linear code, with lgray(0) all zeros."""

    kind = 'lgray'

    def __init__(self, code: LinearCodec, ties: TieBreakPolicy = DETERMINISTIC):
        super().__init__()
        self.code = code
        self.ties = ties
        self.layout = LinearGrayLayout(code)
        self._params = CodecParams(m=self.layout.max_value, d=self.layout.block_len, distance=1)
        self.logger.debug(f"Built {self!r} over {code!r}")

    @property
    def params(self) -> CodecParams:
        return self._params

    def encode(self, v: int) -> BitString:
        return lgray_encode(self.layout, v)

    def decode(self, c: BitString) -> int:
        return lgray_decode(self.layout, c, self.ties)

    def candidates(self, c: BitString) -> List[int]:
        return lgray_candidates(self.layout, c, self.ties)

    def describe(self) -> dict:
        return {'kind': self.kind, 'inner': self.code.describe()}
